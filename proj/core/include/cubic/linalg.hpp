#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cubic/errors.hpp"
#include "cubic/matrix.hpp"
#include "cubic/ring.hpp"

namespace cubic {

template <Ring R>
void require_same_ring(const Matrix<R>& a, const Matrix<R>& b) {
  if (!(a.ring() == b.ring())) throw InputError("matrices are over different rings");
}

template <Ring R>
Matrix<R> mat_mul(const Matrix<R>& a, const Matrix<R>& b) {
  if (a.cols() != b.rows()) {
    throw InputError("shape mismatch in product: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  require_same_ring(a, b);
  const R& ring = a.ring();
  Matrix<R> c(ring, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& x = a(i, k);
      if (ring.is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (ring.is_zero(b(k, j))) continue;
        c(i, j) = ring.add(c(i, j), ring.mul(x, b(k, j)));
      }
    }
  }
  return c;
}

template <Ring R>
Matrix<R> mat_add(const Matrix<R>& a, const Matrix<R>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("shape mismatch in sum");
  Matrix<R> c(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.ring().add(a(i, j), b(i, j));
  return c;
}

template <Ring R>
Matrix<R> mat_sub(const Matrix<R>& a, const Matrix<R>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("shape mismatch in difference");
  Matrix<R> c(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.ring().sub(a(i, j), b(i, j));
  return c;
}

template <Ring R>
Matrix<R> mat_scale(const Matrix<R>& a, const typename R::Element& s) {
  Matrix<R> c(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.ring().mul(s, a(i, j));
  return c;
}

template <Ring R>
Matrix<R> transpose(const Matrix<R>& a) {
  Matrix<R> t(a.ring(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <Ring R, class F>
Matrix<R> map_entries(const Matrix<R>& a, F&& fn) {
  Matrix<R> c(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = fn(a(i, j));
  return c;
}

template <Ring R>
Matrix<R> mat_pow(const Matrix<R>& a, std::uint64_t e) {
  if (!a.is_square()) throw InputError("power of a non-square matrix");
  Matrix<R> result = Matrix<R>::identity(a.ring(), a.rows());
  Matrix<R> base = a;
  while (e > 0) {
    if (e & 1U) result = mat_mul(result, base);
    e >>= 1U;
    if (e > 0) base = mat_mul(base, base);
  }
  return result;
}

// x * M for a row vector x.
template <Ring R>
std::vector<typename R::Element> row_times(std::span<const typename R::Element> x, const Matrix<R>& m) {
  if (x.size() != m.rows()) throw InputError("row vector length does not match matrix rows");
  const R& ring = m.ring();
  std::vector<typename R::Element> y(m.cols(), ring.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (ring.is_zero(x[i])) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) y[j] = ring.add(y[j], ring.mul(x[i], m(i, j)));
  }
  return y;
}

template <Ring R>
Matrix<R> submatrix(const Matrix<R>& a, std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) {
  if (r0 + nr > a.rows() || c0 + nc > a.cols()) throw InputError("submatrix out of range");
  Matrix<R> s(a.ring(), nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) s(i, j) = a(r0 + i, c0 + j);
  return s;
}

template <Ring R>
void set_submatrix(Matrix<R>& a, std::size_t r0, std::size_t c0, const Matrix<R>& s) {
  if (r0 + s.rows() > a.rows() || c0 + s.cols() > a.cols()) throw InputError("submatrix out of range");
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) a(r0 + i, c0 + j) = s(i, j);
}

// Block (i, j) of a square matrix partitioned by `profile`.
template <Ring R>
Matrix<R> block_of(const Matrix<R>& a, const BlockProfile& profile, std::size_t i, std::size_t j) {
  if (profile.total() != a.rows() || !a.is_square()) throw InputError("block profile does not match matrix");
  return submatrix(a, profile.offset(i), profile.offset(j), profile.sizes.at(i), profile.sizes.at(j));
}

// Row/column index of the product is (outer, inner) lexicographic.
template <Ring R>
Matrix<R> kron(const Matrix<R>& a, const Matrix<R>& b) {
  require_same_ring(a, b);
  const R& ring = a.ring();
  Matrix<R> c(ring, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (ring.is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) c(i * b.rows() + k, j * b.cols() + l) = ring.mul(a(i, j), b(k, l));
    }
  }
  return c;
}

template <Ring R>
struct DirectSum {
  Matrix<R> matrix;
  BlockProfile profile;
};

// Block-diagonal stacking in list order.
template <Ring R>
DirectSum<R> direct_sum(std::span<const Matrix<R>> ms) {
  if (ms.empty()) throw InputError("direct sum of an empty list");
  std::size_t rows = 0, cols = 0;
  BlockProfile profile;
  for (const auto& m : ms) {
    require_same_ring(ms.front(), m);
    rows += m.rows();
    cols += m.cols();
    profile.sizes.push_back(m.rows());
  }
  Matrix<R> out(ms.front().ring(), rows, cols);
  std::size_t r = 0, c = 0;
  for (const auto& m : ms) {
    set_submatrix(out, r, c, m);
    r += m.rows();
    c += m.cols();
  }
  return {std::move(out), std::move(profile)};
}

template <Ring R>
DirectSum<R> direct_sum(std::initializer_list<Matrix<R>> ms) {
  const std::vector<Matrix<R>> v(ms);
  return direct_sum(std::span<const Matrix<R>>(v));
}

// ---------------------------------------------------------------------------
// Elimination over fields.

template <Field F>
struct EchelonForm {
  Matrix<F> reduced;                // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
  std::size_t rank() const { return pivots.size(); }
};

// Pivot = first nonzero entry scanning columns left to right, rows top to bottom.
template <Field F>
EchelonForm<F> rref(Matrix<F> m) {
  const F& field = m.ring();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && field.is_zero(m(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(row, pivot);
    const auto inv = field.inv(m(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = field.mul(m(row, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || field.is_zero(m(i, col))) continue;
      const auto factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!field.is_zero(m(row, j))) m(i, j) = field.sub(m(i, j), field.mul(factor, m(row, j)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <Field F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank();
}

// Basis of {x : x * m = 0}, in reduced row echelon form.
template <Field F>
std::vector<std::vector<typename F::Element>> row_kernel(const Matrix<F>& m) {
  const F& field = m.ring();
  // x m = 0  <=>  m^T x^T = 0: null space of m^T from its RREF.
  const auto ech = rref(transpose(m));
  const std::size_t n = m.rows();
  std::vector<bool> is_pivot(n, false);
  for (const auto p : ech.pivots) is_pivot[p] = true;
  std::vector<std::vector<typename F::Element>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::Element> v(n, field.zero());
    v[free] = field.one();
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = field.neg(ech.reduced(r, free));
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return basis;
  const auto normalized = rref(Matrix<F>::from_rows(field, basis));
  std::vector<std::vector<typename F::Element>> out;
  for (std::size_t r = 0; r < normalized.rank(); ++r) out.push_back(normalized.reduced.row(r));
  return out;
}

template <Field F>
Matrix<F> mat_inverse(const Matrix<F>& m) {
  if (!m.is_square()) throw InputError("inverse of a non-square matrix");
  const F& field = m.ring();
  const std::size_t n = m.rows();
  Matrix<F> aug(field, n, 2 * n);
  set_submatrix(aug, 0, 0, m);
  set_submatrix(aug, 0, n, Matrix<F>::identity(field, n));
  const auto ech = rref(std::move(aug));
  std::size_t left_rank = 0;
  for (const auto p : ech.pivots) left_rank += p < n ? 1 : 0;
  if (left_rank < n) throw SingularMatrixError("matrix is singular", left_rank);
  return submatrix(ech.reduced, 0, n, n, n);
}

// ---------------------------------------------------------------------------
// Determinants and characteristic polynomials.

// Coefficients c_0..c_n of det(x*1 - m) (monic, c_n = 1), by Berkowitz's
// division-free algorithm. Works over any commutative ring.
template <Ring R>
std::vector<typename R::Element> charpoly(const Matrix<R>& m) {
  if (!m.is_square()) throw InputError("characteristic polynomial of a non-square matrix");
  const R& ring = m.ring();
  const std::size_t n = m.rows();
  using E = typename R::Element;
  // Highest degree first while accumulating.
  std::vector<E> poly{ring.one()};
  for (std::size_t k = 0; k < n; ++k) {
    // Leading principal (k+1)x(k+1) submatrix: [[A, R_], [C, a]] with A k x k.
    const E& a = m(k, k);
    std::vector<E> col(k, ring.zero());  // C^T entries m(k, 0..k-1) acting as a row
    std::vector<E> rcol(k, ring.zero());
    for (std::size_t i = 0; i < k; ++i) {
      rcol[i] = m(i, k);
      col[i] = m(k, i);
    }
    // Toeplitz column: 1, -a, -C R, -C A R, -C A^2 R, ...
    std::vector<E> t;
    t.push_back(ring.one());
    t.push_back(ring.neg(a));
    std::vector<E> v = rcol;  // A^j R
    for (std::size_t j = 0; j < k; ++j) {
      E s = ring.zero();
      for (std::size_t i = 0; i < k; ++i) s = ring.add(s, ring.mul(col[i], v[i]));
      t.push_back(ring.neg(s));
      if (j + 1 < k) {
        std::vector<E> w(k, ring.zero());
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t l = 0; l < k; ++l) w[i] = ring.add(w[i], ring.mul(m(i, l), v[l]));
        v = std::move(w);
      }
    }
    // New polynomial = Toeplitz(t) * poly, length k+2.
    std::vector<E> next(k + 2, ring.zero());
    for (std::size_t i = 0; i < k + 2; ++i) {
      for (std::size_t j = 0; j <= std::min(i, k); ++j) {
        if (i - j < t.size()) next[i] = ring.add(next[i], ring.mul(t[i - j], poly[j]));
      }
    }
    poly = std::move(next);
  }
  std::reverse(poly.begin(), poly.end());
  return poly;
}

namespace detail {

template <Ring R>
typename R::Element det_cofactor(const Matrix<R>& m) {
  const R& ring = m.ring();
  const std::size_t n = m.rows();
  if (n == 0) return ring.one();
  if (n == 1) return m(0, 0);
  if (n == 2) return ring.sub(ring.mul(m(0, 0), m(1, 1)), ring.mul(m(0, 1), m(1, 0)));
  auto acc = ring.zero();
  for (std::size_t j = 0; j < n; ++j) {
    if (ring.is_zero(m(0, j))) continue;
    Matrix<R> minor(ring, n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        minor(i - 1, cc++) = m(i, k);
      }
    }
    auto term = ring.mul(m(0, j), det_cofactor(minor));
    acc = (j % 2 == 0) ? ring.add(acc, term) : ring.sub(acc, term);
  }
  return acc;
}

}  // namespace detail

// Bareiss fraction-free elimination; every division is exact in a domain.
template <IntegralDomain R>
typename R::Element det_bareiss(Matrix<R> m) {
  const R& ring = m.ring();
  const std::size_t n = m.rows();
  if (n == 0) return ring.one();
  auto prev = ring.one();
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (ring.is_zero(m(k, k))) {
      std::size_t swap = k + 1;
      while (swap < n && ring.is_zero(m(swap, k))) ++swap;
      if (swap == n) return ring.zero();
      m.swap_rows(k, swap);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        auto num = ring.sub(ring.mul(m(k, k), m(i, j)), ring.mul(m(i, k), m(k, j)));
        auto q = ring.divide_exact(num, prev);
        if (!q) throw InvariantViolation("inexact division in fraction-free elimination");
        m(i, j) = std::move(*q);
      }
      m(i, k) = ring.zero();
    }
    prev = m(k, k);
  }
  auto d = m(n - 1, n - 1);
  return negate ? ring.neg(d) : d;
}

// Exact determinant: Gaussian elimination over fields, fraction-free
// elimination over other domains, cofactor expansion (n <= 4) or the
// characteristic polynomial otherwise.
template <Ring R>
typename R::Element mat_det(const Matrix<R>& m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  const R& ring = m.ring();
  if constexpr (Field<R>) {
    Matrix<R> a = m;
    const std::size_t n = a.rows();
    auto det = ring.one();
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && ring.is_zero(a(p, c))) ++p;
      if (p == n) return ring.zero();
      if (p != c) {
        a.swap_rows(p, c);
        det = ring.neg(det);
      }
      det = ring.mul(det, a(c, c));
      const auto inv = ring.inv(a(c, c));
      for (std::size_t i = c + 1; i < n; ++i) {
        if (ring.is_zero(a(i, c))) continue;
        const auto f = ring.mul(a(i, c), inv);
        for (std::size_t j = c; j < n; ++j) a(i, j) = ring.sub(a(i, j), ring.mul(f, a(c, j)));
      }
    }
    return det;
  } else if constexpr (IntegralDomain<R>) {
    return det_bareiss(m);
  } else {
    if (m.rows() <= 4) return detail::det_cofactor(m);
    auto cp = charpoly(m);
    return (m.rows() % 2 == 0) ? cp.front() : ring.neg(cp.front());
  }
}

// Rank over the fraction field of a domain (fraction-free forward elimination).
template <IntegralDomain R>
std::size_t rank_fraction_free(Matrix<R> m) {
  const R& ring = m.ring();
  std::size_t row = 0;
  auto prev = ring.one();
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && ring.is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(row, p);
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      for (std::size_t j = col + 1; j < m.cols(); ++j) {
        auto num = ring.sub(ring.mul(m(row, col), m(i, j)), ring.mul(m(i, col), m(row, j)));
        auto q = ring.divide_exact(num, prev);
        if (!q) throw InvariantViolation("inexact division in fraction-free elimination");
        m(i, j) = std::move(*q);
      }
      m(i, col) = ring.zero();
    }
    prev = m(row, col);
    ++row;
  }
  return row;
}

// Inverse over a commutative ring whose determinant is a unit: adj(m) / det(m),
// with the adjugate taken from the characteristic polynomial.
template <UnitInvertible R>
Matrix<R> mat_inverse_adjugate(const Matrix<R>& m) {
  if (!m.is_square()) throw InputError("inverse of a non-square matrix");
  const R& ring = m.ring();
  const std::size_t n = m.rows();
  const auto cp = charpoly(m);  // c_0 .. c_n
  // m * q(m) = -c_0 * 1 with q(x) = x^{n-1} + c_{n-1} x^{n-2} + ... + c_1.
  Matrix<R> q = Matrix<R>::identity(ring, n);
  for (std::size_t k = n - 1; k >= 1; --k) {
    q = mat_add(mat_mul(q, m), Matrix<R>::scalar(ring, n, cp[k]));
    if (k == 1) break;
  }
  if (n == 1) q = Matrix<R>::identity(ring, 1);
  const auto minus_c0 = ring.neg(cp[0]);
  const auto inv = ring.try_inverse(minus_c0);
  if (!inv) throw SingularMatrixError("determinant is not a unit", 0);
  return mat_scale(q, *inv);
}

// G^{-1} r G with G = diag(gs) partitioned by `profile`.
template <Field F>
Matrix<F> gauge_conjugate(const Matrix<F>& r, const BlockProfile& profile, std::span<const Matrix<F>> gs) {
  if (gs.size() != profile.sizes.size()) throw InputError("gauge count does not match block profile");
  if (profile.total() != r.rows() || !r.is_square()) throw InputError("block profile does not match matrix");
  std::vector<Matrix<F>> inverses;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (!gs[i].is_square() || gs[i].rows() != profile.sizes[i]) throw InputError("gauge block has the wrong size");
    try {
      inverses.push_back(mat_inverse(gs[i]));
    } catch (const SingularMatrixError& e) {
      throw InputError(std::string("gauge block is singular: ") + e.what());
    }
  }
  const auto g = direct_sum(gs).matrix;
  const auto g_inv = direct_sum(std::span<const Matrix<F>>(inverses)).matrix;
  return mat_mul(mat_mul(g_inv, r), g);
}

}  // namespace cubic
