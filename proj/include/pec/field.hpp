#pragma once

#include <cstdint>
#include <vector>

namespace pec {

using Symbol = std::uint8_t;
using SymbolVec = std::vector<Symbol>;

bool is_prime(int q);

/// Prime-field alphabet GF(q) with explicit operation tables.
///
/// Symbols are the residues 0..q-1 with addition and multiplication mod q.
/// Only prime q is accepted; extension fields would need externally supplied
/// tables and are not part of this version.
class Alphabet {
 public:
  explicit Alphabet(int q = 2);

  int size() const { return q_; }

  Symbol add(Symbol a, Symbol b) const { return add_[idx(a, b)]; }
  Symbol sub(Symbol a, Symbol b) const { return add_[idx(a, neg_[check(b)])]; }
  Symbol neg(Symbol a) const { return neg_[check(a)]; }
  Symbol mul(Symbol a, Symbol b) const { return mul_[idx(a, b)]; }
  Symbol inv(Symbol a) const;

  /// Row-major q*q table, entry [a*q+b] = a + b.
  const std::vector<Symbol>& add_table() const { return add_; }
  const std::vector<Symbol>& mul_table() const { return mul_; }

  bool contains(int s) const { return s >= 0 && s < q_; }
  void check_vector(const SymbolVec& x) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.q_ == b.q_;
  }

 private:
  int q_;
  std::vector<Symbol> add_, neg_, mul_, inv_;

  int idx(Symbol a, Symbol b) const { return int(check(a)) * q_ + check(b); }
  Symbol check(Symbol a) const;
};

}  // namespace pec
