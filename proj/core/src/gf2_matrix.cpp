#include "cubic/gf2_matrix.hpp"

#include <utility>

#include "cubic/errors.hpp"

namespace cubic {

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * ((cols + 63) / 64), 0) {}

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
  Gf2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void Gf2Matrix::set(std::size_t i, std::size_t j, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (j & 63);
  if (v) {
    row_ptr(i)[j >> 6] |= mask;
  } else {
    row_ptr(i)[j >> 6] &= ~mask;
  }
}

Gf2Matrix Gf2Matrix::from_matrix(const Matrix<GaloisField>& m) {
  const auto& f = m.ring();
  if (f.characteristic() != 2 || f.degree() != 1) throw InputError("bit-packed matrices need entries in F_2");
  Gf2Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!f.is_zero(m(i, j))) out.set(i, j, true);
  return out;
}

Matrix<GaloisField> Gf2Matrix::to_matrix() const {
  const auto f = GaloisField::prime(2);
  Matrix<GaloisField> out(f, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (get(i, j)) out(i, j) = f.one();
  return out;
}

void Gf2Matrix::xor_row_into(std::size_t src, std::size_t dst) {
  const std::uint64_t* s = row_ptr(src);
  std::uint64_t* d = row_ptr(dst);
  for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void Gf2Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t w = 0; w < wpr_; ++w) std::swap(row_ptr(a)[w], row_ptr(b)[w]);
}

Gf2Echelon gf2_rref(Gf2Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && !m.get(pivot, col)) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(row, pivot);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != row && m.get(i, col)) m.xor_row_into(row, i);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t gf2_rank(const Gf2Matrix& m) { return gf2_rref(m).rank(); }

Gf2Matrix gf2_mul(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.cols() != b.rows()) throw InputError("shape mismatch in bit-packed product");
  Gf2Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::uint64_t* dst = c.row_ptr(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (!a.get(i, k)) continue;
      const std::uint64_t* src = b.row_ptr(k);
      for (std::size_t w = 0; w < c.words_per_row(); ++w) dst[w] ^= src[w];
    }
  }
  return c;
}

Gf2Matrix gf2_transpose(const Gf2Matrix& a) {
  Gf2Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.get(i, j)) t.set(j, i, true);
  return t;
}

Gf2Matrix gf2_row_kernel(const Gf2Matrix& m) {
  const auto ech = gf2_rref(gf2_transpose(m));
  const std::size_t n = m.rows();
  std::vector<bool> is_pivot(n, false);
  for (const auto p : ech.pivots) is_pivot[p] = true;
  Gf2Matrix basis(n - ech.rank(), n);
  std::size_t r = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    basis.set(r, free, true);
    for (std::size_t k = 0; k < ech.rank(); ++k) {
      if (ech.reduced.get(k, free)) basis.set(r, ech.pivots[k], true);
    }
    ++r;
  }
  return gf2_rref(std::move(basis)).reduced;
}

}  // namespace cubic
