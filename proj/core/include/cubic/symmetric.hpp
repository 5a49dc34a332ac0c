#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cubic/decomp3d.hpp"

namespace cubic {

struct SymmetrizeResult {
  std::array<GfElement, 3> gauge;  // G = diag(gauge)
  Matrix<GaloisField> symmetric;   // G^{-1} A G
};

// Requires characteristic 2 and a12 a23 a31 = a13 a32 a21 != 0.
SymmetrizeResult symmetrize_brick(const Matrix<GaloisField>& a);

enum class SymmetricLevel { Simple, Double };

std::string to_string(SymmetricLevel level);

// x / d for an exact quotient; over matrix algebras d must be a scalar matrix.
inline GfElement exact_quotient(const GaloisField& f, const GfElement& x, const GfElement& d) { return f.div(x, d); }
MultiPoly exact_quotient(const PolyRing& r, const MultiPoly& x, const MultiPoly& d);
template <Ring Base>
Matrix<Base> exact_quotient(const MatrixAlgebra<Base>& alg, const Matrix<Base>& x, const Matrix<Base>& d) {
  typename Base::Element s;
  if (!d.is_scalar(&s)) throw InputError("division by a non-scalar algebra element");
  return map_entries(x, [&](const typename Base::Element& e) { return exact_quotient(alg.base(), e, s); });
}

template <Ring R>
using RowVec = std::vector<typename R::Element>;

// Bases (e1, e2, g, f) of the three thick spaces of the block of a symmetric
// brick. g of the first space is (0, 0, 0, a12 a13 a23^2); the others are its
// images under R12 / a12^2 and R13 / a13^2.
template <Ring R>
struct SymmetricBasis {
  std::array<Matrix<R>, 3> p;
  std::array<RowVec<R>, 3> g;

  Matrix<R> stacked() const { return direct_sum(std::span<const Matrix<R>>(p.data(), p.size())).matrix; }
};

template <Ring R>
SymmetricBasis<R> symmetric_basis(const Matrix<R>& a, const Matrix<R>& block) {
  const R& r = a.ring();
  const auto thick = thick_basis_matrices(a).p;
  const auto sq = [&](const auto& x) { return r.mul(x, x); };
  RowVec<R> g1{r.zero(), r.zero(), r.zero(), r.mul(r.mul(a(0, 1), a(0, 2)), sq(a(1, 2)))};
  auto image = [&](const RowVec<R>& v, std::size_t j, const typename R::Element& d) {
    auto w = row_times<R>(v, thick_block(block, 0, j, 4));
    for (auto& x : w) x = exact_quotient(r, x, d);
    return w;
  };
  SymmetricBasis<R> out;
  out.g = {g1, image(g1, 1, sq(a(0, 1))), image(g1, 2, sq(a(0, 2)))};
  for (std::size_t i = 0; i < 3; ++i) {
    out.p[i] = Matrix<R>::from_rows(r, {thick[i].row(1), thick[i].row(2), out.g[i], thick[i].row(0)});
  }
  return out;
}

// Target: entry a_ij^2 between slot t of space i and slot t of space j, plus
// a23^2 from g of space 2 (3) to f of space 3 (2).
template <Ring R>
Matrix<R> symmetric_target(const Matrix<R>& a) {
  const R& r = a.ring();
  Matrix<R> s(r, 12, 12);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t t = 0; t < 4; ++t) s(4 * i + t, 4 * j + t) = r.mul(a(i, j), a(i, j));
  const auto c = r.mul(a(1, 2), a(1, 2));
  s(4 * 1 + 2, 4 * 2 + 3) = c;
  s(4 * 2 + 2, 4 * 1 + 3) = c;
  return s;
}

// The first failing relation among e_t R_ij = a_ij^2 e_t, f R_ij = a_ij^2 f and
// g R_ij = a_ij^2 (g + [ij in {23, 32}] f), for all spaces i, j.
template <Ring R>
std::optional<std::string> symmetric_relation_failure(const Matrix<R>& a, const Matrix<R>& block,
                                                      const SymmetricBasis<R>& basis) {
  const R& r = a.ring();
  static const char* names[4] = {"e1", "e2", "g", "f"};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const auto rij = thick_block(block, i, j, 4);
      const auto c = r.mul(a(i, j), a(i, j));
      for (std::size_t t = 0; t < 4; ++t) {
        const auto lhs = row_times<R>(basis.p[i].row(t), rij);
        auto rhs = basis.p[j].row(t);
        const bool coupled = t == 2 && ((i == 1 && j == 2) || (i == 2 && j == 1));
        if (coupled) {
          const auto f = basis.p[j].row(3);
          for (std::size_t k = 0; k < 4; ++k) rhs[k] = r.add(rhs[k], f[k]);
        }
        for (auto& x : rhs) x = r.mul(c, x);
        for (std::size_t k = 0; k < 4; ++k) {
          if (!r.equal(lhs[k], rhs[k])) {
            return std::string(t == 2 ? "g-relation" : "eigenvector relation") + " fails for " + names[t] +
                   " of space " + std::to_string(i + 1) + " under R_" + std::to_string(i + 1) + std::to_string(j + 1);
          }
        }
      }
    }
  }
  return std::nullopt;
}

// 3x3 brick over 2x2 matrices: a_ij * 1 except a23 * T at (2,3) and (3,2),
// with T = [[1, 1], [0, 1]].
template <Ring R>
Matrix<MatrixAlgebra<R>> double_brick(const Matrix<R>& a) {
  const R& r = a.ring();
  MatrixAlgebra<R> alg(r, 2);
  const auto t = Matrix<R>::from_rows(r, {{r.one(), r.one()}, {r.zero(), r.one()}});
  Matrix<MatrixAlgebra<R>> out(alg, 3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const bool coupled = (i == 1 && j == 2) || (i == 2 && j == 1);
      out(i, j) = coupled ? mat_scale(t, a(i, j)) : alg.scalar(a(i, j));
    }
  return out;
}

// Printed g of spaces 2 and 3 (identical as printed); compared against the
// recomputed quotients in the reports.
template <Ring R>
RowVec<R> printed_g23(const Matrix<R>& a) {
  const R& r = a.ring();
  const auto c = r.mul(a(0, 2), r.mul(a(1, 2), a(1, 2)));
  return {r.zero(), c, r.zero(), r.mul(a(0, 0), c)};
}

DecompositionReport verify_symmetric_decomposition_symbolic(SymmetricLevel level);
// `a` must be symmetric; a12, a13, a23 = 0 is reported as Degenerate.
DecompositionReport verify_symmetric_decomposition_instance(const Matrix<GaloisField>& a, SymmetricLevel level);

}  // namespace cubic
