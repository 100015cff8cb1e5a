#include "pec/region.hpp"

#include <algorithm>
#include <cmath>

#include "pec/errors.hpp"

namespace pec {

namespace {
constexpr double kTol = 1e-9;
}

std::string to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::kSlepianWolf: return "SW";
    case RegionKind::kKey: return "KEY";
    case RegionKind::kInner: return "INNER";
    case RegionKind::kOuter: return "OUTER";
    case RegionKind::kSumSegment: return "S_SET";
  }
  return "?";
}

std::string to_string(Sense sense) { return sense == Sense::kGe ? ">=" : "<="; }

bool Constraint::satisfied(const RatePair& r, double tol) const {
  double v = a * r.r1 + b * r.r2;
  return sense == Sense::kGe ? v >= c - tol : v <= c + tol;
}

Region::Region(RegionKind kind, std::vector<Constraint> constraints, bool empty)
    : kind_(kind), constraints_(std::move(constraints)), empty_(empty) {}

bool Region::contains(const RatePair& r, double tol) const {
  if (empty_) return false;
  for (const Constraint& c : constraints_)
    if (!c.satisfied(r, tol)) return false;
  return true;
}

Region sw_region(const JointPmf& source) {
  return Region(RegionKind::kSlepianWolf,
                {{1, 0, Sense::kGe, source.conditional_entropy(1)},
                 {0, 1, Sense::kGe, source.conditional_entropy(2)},
                 {1, 1, Sense::kGe, source.entropy_joint()}});
}

Region key_region(const JointPmf& keys) {
  return Region(RegionKind::kKey,
                {{1, 0, Sense::kLe, keys.entropy_marginal(1)},
                 {0, 1, Sense::kLe, keys.entropy_marginal(2)},
                 {1, 1, Sense::kLe, keys.entropy_joint()}});
}

SumRateSegment sum_rate_segment(const JointPmf& source, const JointPmf& keys) {
  SumRateSegment s;
  s.sum = source.entropy_joint();
  if (s.sum > keys.entropy_joint() + kTol) return s;  // sum rate infeasible
  s.lo = std::max(source.conditional_entropy(1),
                  s.sum - keys.entropy_marginal(2));
  s.hi = std::min(s.sum - source.conditional_entropy(2),
                  keys.entropy_marginal(1));
  s.empty = s.lo > s.hi + kTol;
  return s;
}

Region inner_region(const JointPmf& source, const JointPmf& keys) {
  SumRateSegment s = sum_rate_segment(source, keys);
  if (s.empty) return Region(RegionKind::kInner, {}, true);
  // Upward closure of the boundary segment: three lower constraints.
  return Region(RegionKind::kInner,
                {{1, 0, Sense::kGe, s.lo},
                 {0, 1, Sense::kGe, s.sum - s.hi},
                 {1, 1, Sense::kGe, s.sum}});
}

Region outer_region(const JointPmf& source, const JointPmf& keys) {
  if (sum_rate_segment(source, keys).empty)
    return Region(RegionKind::kOuter, {}, true);
  return Region(RegionKind::kOuter, sw_region(source).constraints());
}

bool inner_contains(const JointPmf& source, const JointPmf& keys,
                    const RatePair& r, double tol) {
  SumRateSegment s = sum_rate_segment(source, keys);
  if (s.empty) return false;
  // Some segment point (s1, sum - s1) must sit componentwise below r.
  double lo = std::max(s.lo, s.sum - r.r2);
  double hi = std::min(s.hi, r.r1);
  return lo <= hi + tol;
}

std::pair<bool, bool> region_nonempty(const JointPmf& source,
                                      const JointPmf& keys) {
  // Direct route: feasibility of the six half-planes. A nonempty
  // intersection is a compact polytope, so it is nonempty exactly when some
  // pairwise intersection of constraint boundary lines satisfies every
  // constraint.
  std::vector<Constraint> cs = sw_region(source).constraints();
  for (const Constraint& c : key_region(keys).constraints()) cs.push_back(c);

  auto feasible = [&](const RatePair& r) {
    for (const Constraint& c : cs)
      if (!c.satisfied(r, kTol)) return false;
    return true;
  };

  bool direct = false;
  for (size_t i = 0; i < cs.size() && !direct; ++i) {
    for (size_t j = i + 1; j < cs.size() && !direct; ++j) {
      double det = cs[i].a * cs[j].b - cs[j].a * cs[i].b;
      if (std::abs(det) < 1e-12) continue;
      RatePair v{(cs[i].c * cs[j].b - cs[j].c * cs[i].b) / det,
                 (cs[i].a * cs[j].c - cs[j].a * cs[i].c) / det};
      if (feasible(v)) direct = true;
    }
  }

  bool by_entropy =
      source.conditional_entropy(1) <= keys.entropy_marginal(1) + kTol &&
      source.conditional_entropy(2) <= keys.entropy_marginal(2) + kTol &&
      source.entropy_joint() <= keys.entropy_joint() + kTol;
  return {direct, by_entropy};
}

bool coincides_with_sw(const JointPmf& source, const JointPmf& keys) {
  return source.entropy_marginal(1) <= keys.entropy_marginal(1) + kTol &&
         source.entropy_marginal(2) <= keys.entropy_marginal(2) + kTol &&
         source.entropy_joint() <= keys.entropy_joint() + kTol;
}

}  // namespace pec
