#include "pec/field.hpp"

#include <stdexcept>
#include <string>

#include "pec/errors.hpp"

namespace pec {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

Alphabet::Alphabet(int q) : q_(q) {
  if (q < 2) throw validation_error("alphabet size must be at least 2");
  if (q > 251) throw validation_error("alphabet size exceeds symbol range");
  if (!is_prime(q))
    throw validation_error("alphabet size " + std::to_string(q) +
                           " is not prime; only prime fields are supported");
  add_.resize(size_t(q) * q);
  mul_.resize(size_t(q) * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    neg_[a] = Symbol((q - a) % q);
    for (int b = 0; b < q; ++b) {
      add_[size_t(a) * q + b] = Symbol((a + b) % q);
      mul_[size_t(a) * q + b] = Symbol((a * b) % q);
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if ((a * b) % q == 1) inv_[a] = Symbol(b);
}

Symbol Alphabet::inv(Symbol a) const {
  check(a);
  if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
  return inv_[a];
}

Symbol Alphabet::check(Symbol a) const {
  if (int(a) >= q_)
    throw std::domain_error("symbol " + std::to_string(int(a)) +
                            " out of range for GF(" + std::to_string(q_) + ")");
  return a;
}

void Alphabet::check_vector(const SymbolVec& x) const {
  for (Symbol s : x) check(s);
}

}  // namespace pec
