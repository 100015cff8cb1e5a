#include "pec/typical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pec/errors.hpp"
#include "pec/indexing.hpp"

namespace pec {

namespace {

constexpr double kBoundaryEps = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct LetterLogs {
  // log2 of joint and both conditional single-letter probabilities,
  // indexed by x1 * q2 + x2; -inf marks zero probability.
  std::vector<double> joint, cond1, cond2;
  std::vector<double> pjoint;
  int q1 = 0, q2 = 0;
};

LetterLogs letter_logs(const JointPmf& p) {
  LetterLogs L;
  L.q1 = p.q1();
  L.q2 = p.q2();
  auto m1 = p.marginal1();
  auto m2 = p.marginal2();
  L.joint.resize(size_t(L.q1) * L.q2);
  L.cond1.resize(L.joint.size());
  L.cond2.resize(L.joint.size());
  L.pjoint.resize(L.joint.size());
  for (int a = 0; a < L.q1; ++a)
    for (int b = 0; b < L.q2; ++b) {
      size_t idx = size_t(a) * L.q2 + b;
      double pj = p.prob(Symbol(a), Symbol(b));
      L.pjoint[idx] = pj;
      L.joint[idx] = pj > 0.0 ? std::log2(pj) : kNegInf;
      L.cond1[idx] =
          pj > 0.0 && m2[size_t(b)] > 0.0 ? std::log2(pj / m2[size_t(b)]) : kNegInf;
      L.cond2[idx] =
          pj > 0.0 && m1[size_t(a)] > 0.0 ? std::log2(pj / m1[size_t(a)]) : kNegInf;
    }
  return L;
}

}  // namespace

void TypicalParams::validate() const {
  if (!(gamma > 0.0)) throw validation_error("gamma must be positive");
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    throw validation_error("epsilon must lie in [0,1)");
  if (!(delta0 > 0.0)) throw validation_error("delta0 must be positive");
  if (!(delta >= 0.0 && delta <= delta0))
    throw validation_error("delta must lie in [0, delta0]");
}

void TypicalSets::intersect(const DecodableSet& d) {
  d_tilde.clear();
  for (std::uint64_t m : a_tilde) {
    std::uint64_t x1 = m / seq_space, x2 = m % seq_space;
    if (d.contains(x1, x2)) d_tilde.push_back(m);
  }
  has_d_tilde = true;
}

TypicalSets build_typical(const JointPmf& source, int n, double gamma,
                          std::uint64_t budget) {
  if (n < 1) throw validation_error("blocklength must be >= 1");
  if (!(gamma > 0.0)) throw validation_error("gamma must be positive");
  std::uint64_t pairs =
      checked_pow(source.q1(), n) * checked_pow(source.q2(), n);
  if (pairs > budget)
    throw budget_error("build_typical: q^(2n) exceeds the state budget");

  TypicalSets sets;
  sets.n = n;
  sets.q1 = source.q1();
  sets.q2 = source.q2();
  sets.gamma = gamma;
  sets.seq_space = checked_pow(source.q2(), n);
  sets.h_joint = source.entropy_joint();
  sets.h_cond1 = source.conditional_entropy(1);
  sets.h_cond2 = source.conditional_entropy(2);

  LetterLogs L = letter_logs(source);
  std::uint64_t space1 = checked_pow(source.q1(), n);
  std::uint64_t space2 = sets.seq_space;
  CompensatedSum typical_mass;
  for (std::uint64_t i = 0; i < space1; ++i) {
    SymbolVec x1 = unpack_sequence(i, n, source.q1());
    for (std::uint64_t j = 0; j < space2; ++j) {
      SymbolVec x2 = unpack_sequence(j, n, source.q2());
      double lj = 0.0, l1 = 0.0, l2 = 0.0, prod = 1.0;
      for (int t = 0; t < n; ++t) {
        size_t idx = size_t(x1[size_t(t)]) * source.q2() + x2[size_t(t)];
        lj += L.joint[idx];
        l1 += L.cond1[idx];
        l2 += L.cond2[idx];
        prod *= L.pjoint[idx];
      }
      if (lj == kNegInf || l1 == kNegInf || l2 == kNegInf) continue;
      double inv_n = 1.0 / double(n);
      if (std::abs(-lj * inv_n - sets.h_joint) > gamma + kBoundaryEps) continue;
      if (std::abs(-l1 * inv_n - sets.h_cond1) > gamma + kBoundaryEps) continue;
      if (std::abs(-l2 * inv_n - sets.h_cond2) > gamma + kBoundaryEps) continue;
      sets.a_tilde.push_back(i * space2 + j);
      typical_mass.add(prod);
    }
  }
  sets.nu = 1.0 - typical_mass.value();
  if (sets.nu < 0.0) sets.nu = 0.0;
  return sets;
}

bool is_typical_pair(const JointPmf& source, const SymbolVec& x1,
                     const SymbolVec& x2, double gamma) {
  if (x1.size() != x2.size() || x1.empty())
    throw validation_error("typicality needs equal nonempty lengths");
  int n = int(x1.size());
  SequencePair pair(x1, x2);
  double pj = source.product_prob(pair);
  double p1 = source.product_conditional_prob(x1, x2, 1);
  double p2 = source.product_conditional_prob(x2, x1, 2);
  if (pj <= 0.0 || p1 <= 0.0 || p2 <= 0.0) return false;
  double inv_n = 1.0 / double(n);
  return std::abs(-std::log2(pj) * inv_n - source.entropy_joint()) <=
             gamma + kBoundaryEps &&
         std::abs(-std::log2(p1) * inv_n - source.conditional_entropy(1)) <=
             gamma + kBoundaryEps &&
         std::abs(-std::log2(p2) * inv_n - source.conditional_entropy(2)) <=
             gamma + kBoundaryEps;
}

double converse_slack_term(const TypicalParams& params, int n, double nu) {
  params.validate();
  if (n < 1) throw validation_error("blocklength must be >= 1");
  double nu_bar = nu + params.epsilon;
  if (nu_bar >= 1.0)
    throw validation_error(
        "nu + epsilon reaches 1; the slack term is undefined");
  double head = 1.0 - nu_bar;
  return (params.delta / head + std::log2(1.0 / head)) / double(n);
}

}  // namespace pec
