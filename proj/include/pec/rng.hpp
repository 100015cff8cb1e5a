#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace pec {

/// Seeded RNG wrapper. All draws go through the helpers below instead of
/// std distributions, so identical seeds give identical streams on every
/// platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  /// Uniform in [0,1) with 53 random bits.
  double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) via rejection, exactly unbiased.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = bound * (~std::uint64_t(0) / bound);
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % bound;
  }

  /// Derive an independent stream for a sub-task (splitmix64 of seed ^ tag).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 gen_;
};

/// Categorical sampler over a fixed weight vector (Walker alias method).
/// Construction and draws are deterministic given the weights and RNG state.
class AliasSampler {
 public:
  explicit AliasSampler(const std::vector<double>& weights);
  std::size_t draw(Rng& rng) const;

 private:
  std::vector<double> accept_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace pec
