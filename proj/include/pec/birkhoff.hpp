#pragma once

#include <cstdint>
#include <vector>

#include "pec/system.hpp"

namespace pec {

/// The set of keys mapping a fixed plaintext block to a fixed ciphertext:
/// { k : A (x + k) = c }. For the linear construction this is a kernel coset
/// shifted by x, or empty when c - A x is outside the column space.
std::vector<std::uint64_t> key_preimage(const SystemSpec& spec, int terminal,
                                        const SymbolVec& x, const SymbolVec& c);

struct DisjointnessReport {
  // Largest number of keys claimed by two distinct decodable plaintexts for
  // the same ciphertext; must be zero.
  std::uint64_t max_overlap_conditional = 0;
  std::uint64_t max_overlap_joint = 0;
  bool pass = false;
};

/// Checks that distinct decodable plaintexts have disjoint key preimages,
/// per ciphertext, both per-coordinate and jointly.
DisjointnessReport check_disjointness(const SystemSpec& spec,
                                      const DecodableSet& d);

struct SumBoundReport {
  // Doubly-substochastic sums over the decodable set: for every ciphertext
  // the conditional transition masses over decodable plaintexts stay <= 1.
  double max_conditional_sum_1 = 0.0;
  double max_conditional_sum_2 = 0.0;
  double max_joint_sum = 0.0;
  double bound = 1.0;
  double tolerance = 1e-12;
  bool pass = false;
};

/// Extended Birkhoff-von-Neumann style sum bounds: for every ciphertext
/// pair, the decodable-set sum of p(c1,c2 | x1,x2) is at most 1, and for
/// every single ciphertext and conditioning sequence the per-slice sum of
/// p(ci | x1,x2) is at most 1.
SumBoundReport check_sum_bounds(const SystemSpec& spec, const DecodableSet& d);

}  // namespace pec
