#pragma once

#include <optional>
#include <string>

#include "cubic/errors.hpp"
#include "cubic/linalg.hpp"
#include "cubic/matrix.hpp"
#include "cubic/ring.hpp"

namespace cubic {

// n x n matrices over `Base`, used as a ring of brick entries. Only
// commutative subalgebras (circulant, upper-triangular Toeplitz, scalar
// multiples of T) are meaningful as entry rings; nothing here checks that.
template <Ring Base>
class MatrixAlgebra {
 public:
  using Element = Matrix<Base>;

  MatrixAlgebra() = default;
  MatrixAlgebra(Base base, std::size_t n) : base_(std::move(base)), n_(n) {
    if (n_ == 0) throw InputError("matrix algebra of size 0");
  }

  const Base& base() const { return base_; }
  std::size_t size() const { return n_; }
  std::string tag() const { return "M_" + std::to_string(n_) + "(" + base_.tag() + ")"; }

  Element zero() const { return Element(base_, n_, n_); }
  Element one() const { return Element::identity(base_, n_); }
  Element from_int(std::int64_t k) const { return Element::scalar(base_, n_, base_.from_int(k)); }
  Element scalar(const typename Base::Element& s) const { return Element::scalar(base_, n_, s); }

  Element add(const Element& a, const Element& b) const { return mat_add(a, b); }
  Element sub(const Element& a, const Element& b) const { return mat_sub(a, b); }
  Element neg(const Element& a) const { return mat_scale(a, base_.neg(base_.one())); }
  Element mul(const Element& a, const Element& b) const { return mat_mul(a, b); }
  bool is_zero(const Element& a) const { return a.is_zero(); }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  std::optional<Element> try_inverse(const Element& a) const
    requires Field<Base>
  {
    try {
      return mat_inverse(a);
    } catch (const SingularMatrixError&) {
      return std::nullopt;
    }
  }

  friend bool operator==(const MatrixAlgebra& a, const MatrixAlgebra& b) {
    return a.n_ == b.n_ && a.base_ == b.base_;
  }

 private:
  Base base_{};
  std::size_t n_ = 1;
};

// Replace every entry by its n x n block.
template <Ring Base>
Matrix<Base> flatten(const Matrix<MatrixAlgebra<Base>>& m) {
  const auto& alg = m.ring();
  const std::size_t n = alg.size();
  Matrix<Base> out(alg.base(), m.rows() * n, m.cols() * n);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) set_submatrix(out, i * n, j * n, m(i, j));
  return out;
}

template <Ring Base>
Matrix<MatrixAlgebra<Base>> unflatten(const Matrix<Base>& m, const MatrixAlgebra<Base>& alg) {
  const std::size_t n = alg.size();
  if (m.rows() % n != 0 || m.cols() % n != 0) throw InputError("matrix does not split into algebra blocks");
  Matrix<MatrixAlgebra<Base>> out(alg, m.rows() / n, m.cols() / n);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = submatrix(m, i * n, j * n, n, n);
  return out;
}

}  // namespace cubic
