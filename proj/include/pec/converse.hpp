#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pec/region.hpp"
#include "pec/tilde.hpp"

namespace pec {

/// One evaluated inequality. slack >= -1e-9 is a pass; the sense is encoded
/// in the name and slack is always oriented so larger means safer.
struct InequalityRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
};

struct ConverseReport {
  std::vector<InequalityRecord> rows;      // asserted inequalities
  std::vector<InequalityRecord> premises;  // informational premise checks
  bool premises_met = true;
  std::string note;

  bool all_pass() const;
  void append(const ConverseReport& other);
};

constexpr double kSlackTolerance = 1e-9;

InequalityRecord record_le(std::string name, double lhs, double rhs);
InequalityRecord record_ge(std::string name, double lhs, double rhs);

/// Upper bounds on the conditioned ciphertext laws: each conditional atom is
/// capped by the inverse slice mass times 2^{-n[H-gamma]}, and the joint law
/// by the inverse event mass times the joint-entropy cap.
ConverseReport check_probability_bounds(const TildeEnsemble& ens);

/// Entropy bounds on the conditioned ciphertexts: lower bounds from the
/// probability caps, upper bounds from the key entropies, plus the Jensen
/// step used to derive the lower bounds.
ConverseReport check_entropy_bounds(const SystemSpec& spec,
                                    const TildeEnsemble& ens);

/// Conditioning can inflate leakage by at most the inverse event mass:
/// q12 * I(conditioned) <= I(unconditioned) <= delta.
ConverseReport check_mi_conditioning(const SystemSpec& spec,
                                     const TildeEnsemble& ens, double delta);

/// Necessary conditions for a system meeting the reliability and security
/// budgets: key entropies must cover the source entropies up to
/// gamma + slack, and sum-rate boundary points are capped by the key
/// entropies up to 2*gamma + slack. Premise failures are reported, never
/// treated as violations.
ConverseReport check_propositions(const SystemSpec& spec,
                                  const TypicalParams& params,
                                  const std::optional<RatePair>& rates);

/// All checks on one system with shared set construction. epsilon/delta
/// default to the achieved error probability and leakage.
ConverseReport converse_certify(const SystemSpec& spec, double gamma,
                                std::optional<double> epsilon,
                                std::optional<double> delta, double delta0,
                                const std::optional<RatePair>& rates);

}  // namespace pec
