#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pec/gf_linalg.hpp"
#include "pec/pmf.hpp"

namespace pec {

/// Linear compressor x -> A x with an m x n matrix over GF(q).
struct LinearEncoder {
  GfMatrix matrix;

  explicit LinearEncoder(GfMatrix A);
  int n() const { return matrix.cols; }
  int m() const { return matrix.rows; }
  /// (m/n) log2 q, the ciphertext rate in bits per source symbol.
  double rate_bits_per_symbol() const;
};

struct MlDecodeResult {
  SequencePair pair;
  bool in_range = true;  // false when a syndrome lies outside the column space
};

/// The set of source pairs the key-free system reproduces exactly. The
/// encrypted system decodes the same set for every key pair.
struct DecodableSet {
  int n = 0;
  int q = 2;
  std::uint64_t seq_space = 0;            // q^n
  std::vector<std::uint64_t> members;     // packed x1 * seq_space + x2, sorted
  std::unordered_set<std::uint64_t> member_lookup;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> slice1_given2;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> slice2_given1;
  std::vector<std::uint64_t> projection1;  // sorted
  std::vector<std::uint64_t> projection2;

  bool contains(std::uint64_t x1, std::uint64_t x2) const {
    return member_lookup.count(x1 * seq_space + x2) != 0;
  }
  std::size_t size() const { return members.size(); }
};

struct LeakageEstimate {
  double bits = 0.0;
  double radius = 0.0;
  std::uint64_t trials = 0;
};

/// A concrete common-key cryptosystem: one-time pad followed by linear
/// compression at each terminal, maximum-likelihood joint decoding at the
/// sink. Immutable; all operations are pure.
class SystemSpec {
 public:
  SystemSpec(LinearEncoder enc1, LinearEncoder enc2, JointPmf source,
             JointPmf keys, std::uint64_t budget = kDefaultBudget);

  static constexpr std::uint64_t kDefaultBudget = std::uint64_t(1) << 26;

  /// Seeded system with uniform random full-row-rank compressors.
  static SystemSpec random(int n, int q, int m1, int m2, JointPmf source,
                           JointPmf keys, std::uint64_t seed,
                           std::uint64_t budget = kDefaultBudget);

  int n() const { return n_; }
  int q() const { return field_.size(); }
  int m(int terminal) const;
  const Alphabet& field() const { return field_; }
  const LinearEncoder& encoder(int terminal) const;
  const JointPmf& source() const { return source_; }
  const JointPmf& keys() const { return keys_; }
  std::uint64_t budget() const { return budget_; }

  std::uint64_t seq_space() const;                    // q^n
  std::uint64_t cipher_space(int terminal) const;     // q^m_i
  double rate(int terminal) const;

  /// Key-free encoding A x.
  SymbolVec keyfree_encode(int terminal, const SymbolVec& x) const;

  /// Ciphertext A (x + k); equals keyfree_encode(x) + keyfree_encode(k).
  SymbolVec encrypt(int terminal, const SymbolVec& key,
                    const SymbolVec& x) const;

  /// Joint maximum-likelihood decoding over the syndrome cosets, ties broken
  /// by lexicographic order on (x1, x2).
  MlDecodeResult ml_decode(const SymbolVec& s1, const SymbolVec& s2) const;

  /// Sink processing: strip the key images, then decode.
  MlDecodeResult decrypt(const SymbolVec& k1, const SymbolVec& k2,
                         const SymbolVec& c1, const SymbolVec& c2) const;

  /// Exact decodable set by coset enumeration. Refuses above budget.
  DecodableSet decodable_set() const;

  /// Exact Pr[(X1,X2) outside the decodable set].
  double error_probability() const;
  double error_probability(const DecodableSet& d) const;

  /// Monte-Carlo estimate of the error probability over the full
  /// encrypt/decrypt path.
  double error_probability_sampled(std::uint64_t trials,
                                   std::uint64_t seed) const;

  /// Exact mutual information between the ciphertext pair and the source
  /// block pair, in bits. Refuses when q^(4n) exceeds the budget.
  double leakage_exact() const;

  /// Plug-in estimate with Miller-Madow correction and a bootstrap
  /// confidence radius.
  LeakageEstimate leakage_sampled(std::uint64_t trials,
                                  std::uint64_t seed) const;

  /// Distribution of the encoded key pair (A1 K1, A2 K2), indexed by
  /// packed (c1, c2). This is the conditional ciphertext law shifted to the
  /// origin: p(c | x) = image[(c1 - A1 x1, c2 - A2 x2)].
  std::vector<double> cipher_key_image() const;
  static std::vector<double> marginal_cipher_image(
      const std::vector<double>& image, std::uint64_t space1,
      std::uint64_t space2, int terminal);

  double source_pair_prob(std::uint64_t x1_idx, std::uint64_t x2_idx) const;
  SymbolVec unpack(std::uint64_t idx) const;
  std::uint64_t pack(const SymbolVec& x) const;

  /// All solutions of A_terminal x = s, in increasing packed order; empty
  /// when s is outside the column space.
  std::vector<SymbolVec> coset(int terminal, const SymbolVec& s) const;

 private:
  int n_;
  Alphabet field_;
  LinearEncoder enc1_, enc2_;
  JointPmf source_, keys_;
  std::uint64_t budget_;
  std::vector<SymbolVec> kernel_span1_, kernel_span2_;  // sorted by packed index

  const std::vector<SymbolVec>& kernel_span(int terminal) const;
  void check_pair_budget(const char* op) const;
};

}  // namespace pec
