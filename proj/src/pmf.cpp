#include "pec/pmf.hpp"

#include <cmath>
#include <string>

#include "pec/errors.hpp"
#include "pec/indexing.hpp"

namespace pec {

namespace {

constexpr double kSumTolerance = 1e-9;

void validate_pmf(std::span<const double> pmf) {
  CompensatedSum sum;
  for (double p : pmf) {
    if (!(p >= 0.0))
      throw validation_error("pmf entry is negative or NaN");
    sum.add(p);
  }
  if (std::abs(sum.value() - 1.0) > kSumTolerance)
    throw validation_error("pmf does not sum to 1 (got " +
                           std::to_string(sum.value()) + ")");
}

double entropy_unchecked(std::span<const double> pmf) {
  CompensatedSum h;
  for (double p : pmf)
    if (p > 0.0) h.add(-p * std::log2(p));
  return h.value();
}

}  // namespace

double entropy(std::span<const double> pmf) {
  validate_pmf(pmf);
  return entropy_unchecked(pmf);
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw validation_error("binary_entropy needs p in [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

SequencePair::SequencePair(SymbolVec a, SymbolVec b)
    : x1(std::move(a)), x2(std::move(b)) {
  if (x1.size() != x2.size())
    throw validation_error("sequence pair components differ in length");
  if (x1.empty()) throw validation_error("sequence pair must have length >= 1");
}

JointPmf::JointPmf(Alphabet a1, Alphabet a2, std::vector<double> probs)
    : a1_(a1), a2_(a2), p_(std::move(probs)) {
  if (p_.size() != size_t(q1()) * size_t(q2()))
    throw validation_error("pmf matrix size does not match alphabet sizes");
  validate_pmf(p_);
  // Renormalize the sub-1e-9 residue so downstream exact sums see a unit mass.
  CompensatedSum sum;
  for (double p : p_) sum.add(p);
  double total = sum.value();
  if (total != 1.0)
    for (double& p : p_) p /= total;
}

JointPmf::JointPmf(int q1, int q2, std::vector<double> probs)
    : JointPmf(Alphabet(q1), Alphabet(q2), std::move(probs)) {}

double JointPmf::prob(Symbol x1, Symbol x2) const {
  if (!a1_.contains(x1) || !a2_.contains(x2))
    throw std::domain_error("symbol out of alphabet range");
  return p_[size_t(x1) * q2() + x2];
}

std::vector<double> JointPmf::marginal1() const {
  std::vector<double> m(size_t(q1()), 0.0);
  for (int i = 0; i < q1(); ++i) {
    CompensatedSum s;
    for (int j = 0; j < q2(); ++j) s.add(p_[size_t(i) * q2() + j]);
    m[size_t(i)] = s.value();
  }
  return m;
}

std::vector<double> JointPmf::marginal2() const {
  std::vector<double> m(size_t(q2()), 0.0);
  for (int j = 0; j < q2(); ++j) {
    CompensatedSum s;
    for (int i = 0; i < q1(); ++i) s.add(p_[size_t(i) * q2() + j]);
    m[size_t(j)] = s.value();
  }
  return m;
}

std::vector<double> JointPmf::marginal(int axis) const {
  if (axis == 1) return marginal1();
  if (axis == 2) return marginal2();
  throw validation_error("axis must be 1 or 2");
}

double JointPmf::entropy_joint() const { return entropy_unchecked(p_); }

double JointPmf::entropy_marginal(int axis) const {
  auto m = marginal(axis);
  return entropy_unchecked(m);
}

double JointPmf::conditional_entropy(int axis) const {
  if (axis != 1 && axis != 2) throw validation_error("axis must be 1 or 2");
  return entropy_joint() - entropy_marginal(axis == 1 ? 2 : 1);
}

double JointPmf::mutual_information() const {
  return entropy_marginal(1) + entropy_marginal(2) - entropy_joint();
}

double JointPmf::conditional_prob(Symbol target, Symbol given,
                                  int target_axis) const {
  double joint = target_axis == 1 ? prob(target, given) : prob(given, target);
  auto m = marginal(target_axis == 1 ? 2 : 1);
  double denom = m[size_t(given)];
  if (denom <= 0.0) return 0.0;
  return joint / denom;
}

double JointPmf::product_prob(const SequencePair& pair) const {
  double p = 1.0;
  for (int t = 0; t < pair.length(); ++t)
    p *= prob(pair.x1[size_t(t)], pair.x2[size_t(t)]);
  return p;
}

double JointPmf::product_conditional_prob(const SymbolVec& target,
                                          const SymbolVec& given,
                                          int target_axis) const {
  if (target.size() != given.size())
    throw validation_error("conditional product needs equal lengths");
  double p = 1.0;
  for (size_t t = 0; t < target.size(); ++t)
    p *= conditional_prob(target[t], given[t], target_axis);
  return p;
}

SequencePair JointPmf::sample(int n, std::uint64_t seed) const {
  if (n < 1) throw validation_error("sample length must be >= 1");
  Rng rng(seed);
  std::vector<double> cdf(p_.size());
  CompensatedSum acc;
  for (size_t i = 0; i < p_.size(); ++i) {
    acc.add(p_[i]);
    cdf[i] = acc.value();
  }
  SymbolVec x1(size_t(n)), x2(size_t(n));
  for (int t = 0; t < n; ++t) {
    double u = rng.uniform();
    size_t cell = 0;
    while (cell + 1 < cdf.size() && u >= cdf[cell]) ++cell;
    x1[size_t(t)] = Symbol(cell / size_t(q2()));
    x2[size_t(t)] = Symbol(cell % size_t(q2()));
  }
  return SequencePair(std::move(x1), std::move(x2));
}

JointPmf JointPmf::uniform(int q1, int q2) {
  std::vector<double> p(size_t(q1) * size_t(q2), 1.0 / (double(q1) * q2));
  return JointPmf(q1, q2, std::move(p));
}

JointPmf JointPmf::doubly_symmetric_binary(double crossover) {
  if (crossover < 0.0 || crossover > 1.0)
    throw validation_error("crossover must lie in [0,1]");
  double agree = (1.0 - crossover) / 2.0;
  double disagree = crossover / 2.0;
  return JointPmf(2, 2, {agree, disagree, disagree, agree});
}

JointPmf JointPmf::independent(std::span<const double> p1,
                               std::span<const double> p2) {
  std::vector<double> p;
  p.reserve(p1.size() * p2.size());
  for (double a : p1)
    for (double b : p2) p.push_back(a * b);
  return JointPmf(int(p1.size()), int(p2.size()), std::move(p));
}

JointPmf JointPmf::random(int q1, int q2, Rng& rng) {
  std::vector<double> w(size_t(q1) * size_t(q2));
  double total = 0.0;
  for (double& v : w) {
    v = -std::log(1.0 - rng.uniform());
    total += v;
  }
  for (double& v : w) v /= total;
  return JointPmf(q1, q2, std::move(w));
}

}  // namespace pec
