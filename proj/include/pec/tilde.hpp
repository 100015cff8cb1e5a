#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "pec/system.hpp"
#include "pec/typical.hpp"

namespace pec {

/// The system conditioned on the typical-and-decodable event: the source
/// pair restricted to that set with renormalized mass, together with the
/// ciphertext pair induced by the keyed encoders. All tabulated quantities
/// are exact enumerations.
struct TildeEnsemble {
  int n = 0, q = 2, m1 = 0, m2 = 0;
  double gamma = 0.0;
  std::uint64_t seq_space = 0, space1 = 0, space2 = 0;

  std::vector<std::uint64_t> members;  // packed pairs, sorted
  std::unordered_map<std::uint64_t, std::size_t> member_index;
  std::vector<double> source_mass;  // p^n per member
  std::vector<double> cond_mass;    // source_mass / q12
  double q12 = 0.0;                 // mass of the conditioning event
  double q1_mass = 0.0, q2_mass = 0.0;  // projection masses

  // Source entropies used by the bounds.
  double h_joint = 0.0, h_cond1 = 0.0, h_cond2 = 0.0;

  /// Per-direction view: direction i conditions ciphertext i on the other
  /// coordinate of the source pair.
  struct Direction {
    std::vector<std::uint64_t> given;  // conditioning sequences, sorted
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> slice;
    std::unordered_map<std::uint64_t, double> q_cond;
    double h_cipher_given_other = 0.0;  // H(C~i | X~_{3-i})
    // Worst atom of the conditional-probability bound.
    double worst_prob_lhs = 0.0, worst_prob_rhs = 0.0, worst_prob_slack = 0.0;
    double lambda = 0.0;  // slice-mass weighted average of log2 Q_{i|3-i}
  };
  Direction dir1, dir2;

  std::vector<double> key_image;  // distribution of (A1 K1, A2 K2)
  std::vector<double> key_image1, key_image2;
  std::vector<double> cipher_joint;  // p of the conditioned ciphertext pair
  double max_cipher_joint = 0.0;

  double h_cipher_joint = 0.0, h_cipher1 = 0.0, h_cipher2 = 0.0;
  double h_key_image = 0.0, h_key_image1 = 0.0, h_key_image2 = 0.0;

  /// I(source pair; ciphertext pair) under the conditioning.
  double conditional_mutual_information() const {
    return h_cipher_joint - h_key_image;
  }
};

/// Build the exact conditioned ensemble. Requires a nonempty
/// typical-and-decodable set; callers pass TypicalSets already intersected
/// with the system's decodable set (intersects here otherwise).
TildeEnsemble build_tilde(const SystemSpec& spec, const TypicalSets& sets);

/// Largest atomwise deviation between the ensemble's law and the direct
/// conditional law computed by explicit key enumeration.
double tilde_identity_deviation(const SystemSpec& spec,
                                const TildeEnsemble& ens);

}  // namespace pec
