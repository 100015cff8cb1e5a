#pragma once

#include <cstdint>
#include <vector>

#include "pec/pmf.hpp"
#include "pec/system.hpp"

namespace pec {

/// Slack and budget parameters for the finite-blocklength checks.
/// epsilon and delta are interpreted as the achieved error probability and
/// achieved leakage of a concrete system unless set explicitly.
struct TypicalParams {
  double gamma = 0.2;
  double epsilon = 0.0;
  double delta = 0.0;
  double delta0 = 1.0;

  void validate() const;
};

/// Jointly typical pairs at slack gamma: sequences whose per-letter averaged
/// log-probabilities sit within gamma of the matching entropies, for the two
/// conditional laws and the joint law simultaneously.
struct TypicalSets {
  int n = 0;
  int q1 = 2, q2 = 2;
  double gamma = 0.0;
  std::uint64_t seq_space = 0;  // q1^n (first coordinate packing base)

  std::vector<std::uint64_t> a_tilde;  // packed x1 * q2^n + x2, sorted
  double nu = 0.0;                     // mass outside a_tilde

  // Typical pairs that the system also decodes correctly.
  std::vector<std::uint64_t> d_tilde;
  bool has_d_tilde = false;

  // Entropies of the generating source, cached for bound evaluation.
  double h_joint = 0.0, h_cond1 = 0.0, h_cond2 = 0.0;

  void intersect(const DecodableSet& d);
};

TypicalSets build_typical(const JointPmf& source, int n, double gamma,
                          std::uint64_t budget = SystemSpec::kDefaultBudget);

/// Membership re-check for a single pair, evaluated from scratch.
bool is_typical_pair(const JointPmf& source, const SymbolVec& x1,
                     const SymbolVec& x2, double gamma);

/// The finite-n allowance (1/n) [ delta / (1 - nu_bar) + log2 1/(1 - nu_bar) ]
/// with nu_bar = nu + epsilon. Fails when nu_bar >= 1.
double converse_slack_term(const TypicalParams& params, int n, double nu);

}  // namespace pec
