#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cubic/galois_field.hpp"
#include "cubic/identity_check.hpp"
#include "cubic/lattice.hpp"
#include "cubic/linalg.hpp"
#include "cubic/matrix_algebra.hpp"
#include "cubic/multipoly.hpp"

namespace cubic {

enum class SummandKind { Brick, TransposedBrick, SimpleSymmetric, DoubleBrick };

std::string to_string(SummandKind kind);

struct SummandCount {
  SummandKind kind = SummandKind::Brick;
  std::size_t multiplicity = 0;
  std::size_t dimension = 3;  // size of one summand over the entry ring
};

struct DecompositionReport {
  std::string prop;
  Verdict verdict;
  std::vector<SummandCount> summands;
  std::uint64_t frobenius_power = 2;  // entries of every summand are raised to this power
  std::size_t block_dimension = 0;
  nlohmann::json details = nlohmann::json::object();
};

// Variable names of the generic 3x3 brick (a11 .. a33) and of the symmetric one.
std::vector<std::string> brick_variables_3d();
std::vector<std::string> symmetric_variables_3d();

// Generic brick with entry (i, j) the variable a_{i+1, j+1}.
Matrix<PolyRing> generic_brick_3d(const PolyRing& ring);
// Symmetric brick over a ring with variables a11 a12 a13 a22 a23 a33.
Matrix<PolyRing> generic_symmetric_brick(const PolyRing& ring);

// Entrywise power.
template <Ring R>
Matrix<R> entry_power(const Matrix<R>& a, std::uint64_t e) {
  return map_entries(a, [&](const typename R::Element& x) { return ring_pow(a.ring(), x, e); });
}

// The four basis rows per thick space for the 2x2x2 block of a 3x3 brick,
// rows in the order (f, e1, e2, e3). Formulas are the characteristic-two forms.
template <Ring R>
struct ThickBasisSet {
  std::array<Matrix<R>, 3> p;

  Matrix<R> stacked() const { return direct_sum(std::span<const Matrix<R>>(p.data(), p.size())).matrix; }
};

template <Ring R>
ThickBasisSet<R> thick_basis_matrices(const Matrix<R>& a) {
  if (a.rows() != 3 || a.cols() != 3) throw InputError("thick bases need a 3x3 brick");
  const R& r = a.ring();
  auto A = [&](int i, int j) -> const typename R::Element& { return a(i - 1, j - 1); };
  auto mul = [&](const auto& x, const auto& y) { return r.mul(x, y); };
  auto add = [&](const auto& x, const auto& y) { return r.add(x, y); };
  const auto z = r.zero();
  const auto o = r.one();
  auto mk = [&](std::vector<std::vector<typename R::Element>> rows) { return Matrix<R>::from_rows(r, rows); };

  const auto s1 = add(mul(A(2, 1), A(3, 3)), mul(A(2, 3), A(3, 1)));
  const auto t1 = add(mul(A(2, 1), A(3, 2)), mul(A(2, 2), A(3, 1)));
  auto p1 = mk({{mul(A(2, 1), A(3, 1)), mul(A(3, 1), s1), mul(A(2, 1), t1), mul(s1, t1)},
                {z, z, A(1, 2), add(mul(A(1, 2), A(3, 3)), mul(A(1, 3), A(3, 2)))},
                {z, A(1, 3), z, add(mul(A(1, 2), A(2, 3)), mul(A(1, 3), A(2, 2)))},
                {o, A(3, 3), A(2, 2), add(mul(A(2, 2), A(3, 3)), mul(A(2, 3), A(3, 2)))}});

  const auto s2 = add(mul(A(1, 2), A(3, 3)), mul(A(1, 3), A(3, 2)));
  const auto t2 = add(mul(A(1, 1), A(3, 2)), mul(A(1, 2), A(3, 1)));
  auto p2 = mk({{mul(A(1, 2), A(3, 2)), mul(A(3, 2), s2), mul(A(1, 2), t2), mul(s2, t2)},
                {o, A(3, 3), A(1, 1), add(mul(A(1, 1), A(3, 3)), mul(A(1, 3), A(3, 1)))},
                {z, A(2, 3), z, add(mul(A(1, 1), A(2, 3)), mul(A(1, 3), A(2, 1)))},
                {z, z, A(2, 1), add(mul(A(2, 1), A(3, 3)), mul(A(2, 3), A(3, 1)))}});

  const auto s3 = add(mul(A(1, 2), A(2, 3)), mul(A(1, 3), A(2, 2)));
  const auto t3 = add(mul(A(1, 1), A(2, 3)), mul(A(1, 3), A(2, 1)));
  auto p3 = mk({{mul(A(1, 3), A(2, 3)), mul(A(2, 3), s3), mul(A(1, 3), t3), mul(s3, t3)},
                {z, A(3, 2), z, add(mul(A(1, 1), A(3, 2)), mul(A(1, 2), A(3, 1)))},
                {o, A(2, 2), A(1, 1), add(mul(A(1, 1), A(2, 2)), mul(A(1, 2), A(2, 1)))},
                {z, z, A(3, 1), add(mul(A(2, 1), A(3, 2)), mul(A(2, 2), A(3, 1)))}});
  return {{std::move(p1), std::move(p2), std::move(p3)}};
}

// Target of the 3D conjugation identity, indexed (space i, slot s) -> 4 i + s:
// the f rows (s = 0) carry the squared transpose, the e rows the squared brick.
template <Ring R>
Matrix<R> frobenius_target_3d(const Matrix<R>& a) {
  const R& r = a.ring();
  Matrix<R> s(r, 12, 12);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t t = 0; t < 4; ++t) {
        const auto& x = t == 0 ? a(j, i) : a(i, j);
        s(4 * i + t, 4 * j + t) = r.mul(x, x);
      }
  return s;
}

// rT (+) (1_3 (x) r) with r the entrywise square of a, in that literal order.
template <Ring R>
Matrix<R> rfrob_direct_sum(const Matrix<R>& a) {
  const auto r2 = entry_power(a, 2);
  const auto ones = Matrix<R>::identity(a.ring(), 3);
  return direct_sum<R>({transpose(r2), kron(ones, r2)}).matrix;
}

// Permutation taking frobenius_target_3d to rfrob_direct_sum: the row (4 i + s)
// of the former is row perm[4 i + s] of the latter.
std::vector<std::size_t> rfrob_permutation();

// First entry where P R != S P, if any.
template <Ring R>
std::optional<std::string> conjugation_mismatch(const Matrix<R>& p, const Matrix<R>& block, const Matrix<R>& s) {
  const auto lhs = mat_mul(p, block);
  const auto rhs = mat_mul(s, p);
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j)
      if (!lhs.ring().equal(lhs(i, j), rhs(i, j)))
        return "P*R differs from S*P at entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
  return std::nullopt;
}

// Block (i, j) of a block matrix with equal thick dimensions.
template <Ring R>
Matrix<R> thick_block(const Matrix<R>& m, std::size_t i, std::size_t j, std::size_t size) {
  return submatrix(m, i * size, j * size, size, size);
}

// ---------------------------------------------------------------------------
// Two dimensions.

// Target for the 2D identity after clearing the 1/b^2 of the second-space basis.
template <Ring R>
Matrix<R> cleared_target_2d(const Matrix<R>& a) {
  const R& r = a.ring();
  const auto sq = [&](const auto& x) { return r.mul(x, x); };
  const auto bc2 = r.mul(sq(a(0, 1)), sq(a(1, 0)));
  const auto z = r.zero();
  const auto o = r.one();
  return Matrix<R>::from_rows(r, {{sq(a(0, 0)), z, o, z},
                                  {z, sq(a(0, 0)), z, o},
                                  {bc2, z, sq(a(1, 1)), z},
                                  {z, bc2, z, sq(a(1, 1))}});
}

// Rows (e1, e2, e1 R12, e2 R12).
template <Ring R>
Matrix<R> cleared_basis_2d(const Matrix<R>& block) {
  const R& r = block.ring();
  return direct_sum<R>({Matrix<R>::identity(r, 2), thick_block(block, 0, 1, 2)}).matrix;
}

// The exact integer-coefficient block of the 2D generic brick.
Matrix<PolyRing> expected_block_2d(const PolyRing& integers);

DecompositionReport verify_decomposition_2d_symbolic();
DecompositionReport verify_decomposition_2d_sampled(const GaloisField& field, std::size_t trials, std::uint64_t seed);
DecompositionReport verify_decomposition_2d_instance(const Matrix<GaloisField>& a);

// ---------------------------------------------------------------------------
// Three dimensions, characteristic two.

DecompositionReport verify_decomposition_3d_symbolic();
DecompositionReport verify_decomposition_3d_sampled(const GaloisField& field, std::size_t trials, std::uint64_t seed);
// Degenerate bricks (equal triple products) are classified and, when the
// symmetric-case hypotheses hold, handed to the symmetric verifier.
DecompositionReport verify_decomposition_3d_instance(const Matrix<GaloisField>& a);
// Entries in a commutative subalgebra of n x n matrices; identity checked on
// the expanded 4n x 4n bases.
DecompositionReport verify_decomposition_3d_algebra(const Matrix<MatrixAlgebra<GaloisField>>& a);

// det over F of a12 a23 a31 - a13 a32 a21 for algebra entries.
GfElement algebra_discriminant(const Matrix<MatrixAlgebra<GaloisField>>& a);

// Line ordering used for every 3D identity. Found by search_line_ordering and
// pinned here; a test reruns the search.
OrderingSpec resolved_line_ordering();

struct OrderingSearchResult {
  std::vector<OrderingSpec> matches;
  std::array<std::vector<std::vector<std::size_t>>, 3> survivors;  // per-axis candidates after pruning
  std::size_t full_checks = 0;
};

// Tries every per-axis slot permutation of the 2x2x2 block at one random
// specialization over `field`. Candidates are pruned per axis by requiring the
// basis rows to be left eigenvectors of both cyclic products; survivors are
// combined and tested with the full conjugation identity.
OrderingSearchResult search_line_ordering(const GaloisField& field, std::uint64_t seed);

// ---------------------------------------------------------------------------
// The p x p x p block of a generic brick.

// Symbolic runs beyond this prime do not finish at desk scale (fraction-free
// rank over nine-variable polynomials); larger p is always sampled.
inline constexpr std::uint32_t kMaxSymbolicB3Prime = 3;

struct B3Options {
  std::uint32_t p = 2;
  bool symbolic = true;
  std::size_t trials = 32;
  std::uint32_t extension_degree = 16;
  std::uint64_t seed = 1;
  // Term cap for a symbolic attempt beyond p = 2; exceeding it falls back to sampling.
  // Applies to every polynomial and to the whole block.
  std::size_t term_budget = 10'000'000;
};

struct B3Report {
  DecompositionReport scalar;    // R_ii scalar, R_kl R_lk = R_lk R_kl scalar
  DecompositionReport spectrum;  // quadratic minimal polynomial and multiplicities
};

B3Report verify_b3(const B3Options& options);
DecompositionReport verify_scalar_structure(const B3Options& options);
DecompositionReport verify_triple_product_spectrum(const B3Options& options);

}  // namespace cubic
