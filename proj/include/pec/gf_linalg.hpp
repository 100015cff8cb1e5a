#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pec/field.hpp"
#include "pec/rng.hpp"

namespace pec {

/// Dense matrix over GF(q), row-major.
struct GfMatrix {
  int rows = 0;
  int cols = 0;
  int q = 2;
  std::vector<Symbol> a;

  GfMatrix() = default;
  GfMatrix(int r, int c, int field_q)
      : rows(r), cols(c), q(field_q), a(size_t(r) * size_t(c), 0) {}

  Symbol at(int r, int c) const { return a[size_t(r) * cols + c]; }
  Symbol& at(int r, int c) { return a[size_t(r) * cols + c]; }

  static GfMatrix identity(int n, int q);
};

/// y = A x over GF(q).
SymbolVec gf_apply(const GfMatrix& A, const SymbolVec& x);

int gf_rank(const GfMatrix& A);

/// Basis of the null space {x : A x = 0}.
std::vector<SymbolVec> gf_kernel_basis(const GfMatrix& A);

/// One particular solution of A x = s, or nullopt when s is outside the
/// column space.
std::optional<SymbolVec> gf_solve(const GfMatrix& A, const SymbolVec& s);

/// Uniform random m x n matrix with full row rank, drawn by rejection.
GfMatrix gf_random_full_row_rank(int m, int n, int q, Rng& rng);

}  // namespace pec
