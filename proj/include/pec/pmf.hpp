#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pec/field.hpp"
#include "pec/rng.hpp"

namespace pec {

/// H(p) in bits, with 0 log 0 = 0. Validates nonnegativity and unit sum
/// (tolerance 1e-9 on the sum).
double entropy(std::span<const double> pmf);

double binary_entropy(double p);

/// A pair of equal-length symbol strings, one per terminal.
struct SequencePair {
  SymbolVec x1;
  SymbolVec x2;

  SequencePair() = default;
  SequencePair(SymbolVec a, SymbolVec b);
  int length() const { return int(x1.size()); }
};

/// Exact joint probability mass function on X1 x X2 for a memoryless pair
/// source. Holds the single-letter distribution; length-n statements use the
/// product extension. Immutable after construction.
class JointPmf {
 public:
  JointPmf(Alphabet a1, Alphabet a2, std::vector<double> probs_row_major);
  JointPmf(int q1, int q2, std::vector<double> probs_row_major);

  const Alphabet& alphabet1() const { return a1_; }
  const Alphabet& alphabet2() const { return a2_; }
  int q1() const { return a1_.size(); }
  int q2() const { return a2_.size(); }

  double prob(Symbol x1, Symbol x2) const;
  const std::vector<double>& probs() const { return p_; }

  std::vector<double> marginal1() const;
  std::vector<double> marginal2() const;
  std::vector<double> marginal(int axis) const;

  double entropy_joint() const;
  double entropy_marginal(int axis) const;

  /// H(X_axis | X_other), computed as H(X1 X2) - H(X_other).
  double conditional_entropy(int axis) const;

  double mutual_information() const;

  /// Single-letter conditional p(x1 | x2) (or the transpose for axis = 2).
  double conditional_prob(Symbol target, Symbol given, int target_axis) const;

  /// Product probability of a length-n pair under the i.i.d. extension.
  double product_prob(const SequencePair& pair) const;

  /// Product conditional probability of x_target given x_given.
  double product_conditional_prob(const SymbolVec& target,
                                  const SymbolVec& given,
                                  int target_axis) const;

  /// n i.i.d. draws; identical seeds give identical output.
  SequencePair sample(int n, std::uint64_t seed) const;

  static JointPmf uniform(int q1, int q2);
  /// Doubly symmetric binary source: equal uniform marginals, given
  /// disagreement probability.
  static JointPmf doubly_symmetric_binary(double crossover);
  static JointPmf independent(std::span<const double> p1,
                              std::span<const double> p2);
  /// Dirichlet-like random joint from seeded exponential weights.
  static JointPmf random(int q1, int q2, Rng& rng);

 private:
  Alphabet a1_, a2_;
  std::vector<double> p_;  // row-major q1 x q2
};

}  // namespace pec
