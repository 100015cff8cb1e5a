#pragma once

#include <cmath>
#include <cstdint>

#include "pec/field.hpp"

namespace pec {

/// q^k, saturating at 2^63 so budget comparisons never overflow.
inline std::uint64_t checked_pow(std::uint64_t q, int k) {
  constexpr std::uint64_t cap = std::uint64_t(1) << 63;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > cap / q) return cap;
    r *= q;
  }
  return r;
}

// Sequences are packed big-endian (first symbol most significant), so the
// numeric order of packed indices is the lexicographic order of sequences.

inline std::uint64_t pack_sequence(const SymbolVec& x, int q) {
  std::uint64_t idx = 0;
  for (Symbol s : x) idx = idx * std::uint64_t(q) + s;
  return idx;
}

inline SymbolVec unpack_sequence(std::uint64_t idx, int n, int q) {
  SymbolVec x(size_t(n));
  for (int t = n - 1; t >= 0; --t) {
    x[size_t(t)] = Symbol(idx % std::uint64_t(q));
    idx /= std::uint64_t(q);
  }
  return x;
}

/// Neumaier compensated accumulator for probability sums.
class CompensatedSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace pec
