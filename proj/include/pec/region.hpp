#pragma once

#include <string>
#include <vector>

#include "pec/pmf.hpp"

namespace pec {

struct RatePair {
  double r1 = 0.0;
  double r2 = 0.0;
};

enum class RegionKind { kSlepianWolf, kKey, kInner, kOuter, kSumSegment };
enum class Sense { kGe, kLe };

std::string to_string(RegionKind kind);
std::string to_string(Sense sense);

/// Half-plane constraint a*R1 + b*R2 {>=,<=} c.
struct Constraint {
  double a = 0.0;
  double b = 0.0;
  Sense sense = Sense::kGe;
  double c = 0.0;

  bool satisfied(const RatePair& r, double tol) const;
};

/// A rate set described by the conjunction of half-plane constraints.
/// Membership uses tolerance 1e-9, so boundary points count as members.
class Region {
 public:
  Region(RegionKind kind, std::vector<Constraint> constraints, bool empty = false);

  RegionKind kind() const { return kind_; }
  bool is_empty_set() const { return empty_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  bool contains(const RatePair& r, double tol = 1e-9) const;

 private:
  RegionKind kind_;
  std::vector<Constraint> constraints_;
  bool empty_;
};

/// Rate requirements for lossless distributed coding of the source pair:
/// R1 >= H(X1|X2), R2 >= H(X2|X1), R1+R2 >= H(X1X2).
Region sw_region(const JointPmf& source);

/// Rate ceilings imposed by the key entropies:
/// R1 <= H(K1), R2 <= H(K2), R1+R2 <= H(K1K2).
Region key_region(const JointPmf& keys);

/// The R1 interval of the sum-rate boundary segment, on the line
/// R1 + R2 = H(X1X2). Empty when the key budget cannot cover the source.
struct SumRateSegment {
  bool empty = true;
  double lo = 0.0;    // R1 lower endpoint
  double hi = 0.0;    // R1 upper endpoint
  double sum = 0.0;   // H(X1X2)
};

SumRateSegment sum_rate_segment(const JointPmf& source, const JointPmf& keys);

/// The achievable region: upward closure of key-cap intersected with the
/// distributed-coding requirements. Expressed with three lower constraints.
Region inner_region(const JointPmf& source, const JointPmf& keys);

/// Outer bound: equals the distributed-coding region when the inner region
/// is nonempty, otherwise the empty set.
Region outer_region(const JointPmf& source, const JointPmf& keys);

/// Membership in the achievable region, via the closed-form segment
/// dominance test: r belongs iff some boundary-segment point lies
/// componentwise below r.
bool inner_contains(const JointPmf& source, const JointPmf& keys,
                    const RatePair& r, double tol = 1e-9);

/// Emptiness decided two ways. `first` is a direct geometric feasibility
/// test on the constraint system (candidate-vertex enumeration); `second`
/// is the entropy-inequality test H(Xi|X3-i) <= H(Ki), H(X1X2) <= H(K1K2).
/// The two must agree.
std::pair<bool, bool> region_nonempty(const JointPmf& source,
                                      const JointPmf& keys);

/// True iff the achievable region coincides with the full
/// distributed-coding region: H(Xi) <= H(Ki) for i = 1,2 and
/// H(X1X2) <= H(K1K2).
bool coincides_with_sw(const JointPmf& source, const JointPmf& keys);

}  // namespace pec
