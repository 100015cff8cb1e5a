#include "pec/gf_linalg.hpp"

#include <stdexcept>

#include "pec/errors.hpp"

namespace pec {

namespace {

struct Elimination {
  GfMatrix m;                 // reduced row echelon form of [A | s?]
  std::vector<int> pivot_col; // pivot column per pivot row
  int rank = 0;
};

// Gauss-Jordan over GF(q). `width` columns participate in pivoting; any
// extra columns (augmented part) are carried along.
Elimination reduce(GfMatrix m, int width) {
  Alphabet f(m.q);
  Elimination e;
  int row = 0;
  for (int col = 0; col < width && row < m.rows; ++col) {
    int pivot = -1;
    for (int r = row; r < m.rows; ++r)
      if (m.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int c = 0; c < m.cols; ++c) std::swap(m.at(pivot, c), m.at(row, c));
    Symbol scale = f.inv(m.at(row, col));
    for (int c = 0; c < m.cols; ++c) m.at(row, c) = f.mul(m.at(row, c), scale);
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      Symbol factor = m.at(r, col);
      for (int c = 0; c < m.cols; ++c)
        m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(row, c)));
    }
    e.pivot_col.push_back(col);
    ++row;
  }
  e.rank = row;
  e.m = std::move(m);
  return e;
}

}  // namespace

GfMatrix GfMatrix::identity(int n, int q) {
  GfMatrix m(n, n, q);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

SymbolVec gf_apply(const GfMatrix& A, const SymbolVec& x) {
  if (int(x.size()) != A.cols)
    throw std::domain_error("matrix-vector dimension mismatch");
  SymbolVec y(size_t(A.rows));
  for (int r = 0; r < A.rows; ++r) {
    int acc = 0;
    const Symbol* row = &A.a[size_t(r) * A.cols];
    for (int c = 0; c < A.cols; ++c) acc += int(row[c]) * int(x[size_t(c)]);
    y[size_t(r)] = Symbol(acc % A.q);
  }
  return y;
}

int gf_rank(const GfMatrix& A) { return reduce(A, A.cols).rank; }

std::vector<SymbolVec> gf_kernel_basis(const GfMatrix& A) {
  Alphabet f(A.q);
  Elimination e = reduce(A, A.cols);
  std::vector<bool> is_pivot(size_t(A.cols), false);
  for (int c : e.pivot_col) is_pivot[size_t(c)] = true;

  std::vector<SymbolVec> basis;
  for (int free = 0; free < A.cols; ++free) {
    if (is_pivot[size_t(free)]) continue;
    SymbolVec v(size_t(A.cols), 0);
    v[size_t(free)] = 1;
    for (int r = 0; r < e.rank; ++r)
      v[size_t(e.pivot_col[size_t(r)])] = f.neg(e.m.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<SymbolVec> gf_solve(const GfMatrix& A, const SymbolVec& s) {
  if (int(s.size()) != A.rows)
    throw std::domain_error("solve: right-hand side length mismatch");
  GfMatrix aug(A.rows, A.cols + 1, A.q);
  for (int r = 0; r < A.rows; ++r) {
    for (int c = 0; c < A.cols; ++c) aug.at(r, c) = A.at(r, c);
    aug.at(r, A.cols) = s[size_t(r)];
  }
  Elimination e = reduce(std::move(aug), A.cols);
  for (int r = e.rank; r < A.rows; ++r)
    if (e.m.at(r, A.cols) != 0) return std::nullopt;
  SymbolVec x(size_t(A.cols), 0);
  for (int r = 0; r < e.rank; ++r)
    x[size_t(e.pivot_col[size_t(r)])] = e.m.at(r, A.cols);
  return x;
}

GfMatrix gf_random_full_row_rank(int m, int n, int q, Rng& rng) {
  if (m < 1 || m > n)
    throw validation_error("encoder output length must satisfy 1 <= m <= n");
  for (int attempt = 0; attempt < 4096; ++attempt) {
    GfMatrix A(m, n, q);
    for (Symbol& s : A.a) s = Symbol(rng.below(std::uint64_t(q)));
    if (gf_rank(A) == m) return A;
  }
  throw std::runtime_error("failed to draw a full-row-rank matrix");
}

}  // namespace pec
