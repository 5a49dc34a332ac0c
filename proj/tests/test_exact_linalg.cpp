#include <gtest/gtest.h>

#include "cubic/decomp3d.hpp"
#include "cubic/errors.hpp"
#include "cubic/gf2_matrix.hpp"
#include "cubic/lattice.hpp"
#include "cubic/linalg.hpp"
#include "cubic/matrix_algebra.hpp"
#include "oracles.hpp"
#include "property.hpp"

using namespace cubic;

namespace {

const GaloisField F2 = GaloisField::prime(2);
const GaloisField GF4 = GaloisField::extension(2, 2);
const GaloisField GF256 = GaloisField::extension(2, 8);

Matrix<GaloisField> random_invertible(const GaloisField& f, std::size_t n, std::mt19937_64& rng) {
  return prop::random_invertible(f, n, rng, [](const auto& m) { return mat_det(m); });
}

}  // namespace

TEST(MatMul, IdentityIsNeutral) {
  prop::for_all(21, 20, [](std::mt19937_64& rng) {
    const auto m = prop::random_matrix(GF256, 4, 5, rng);
    EXPECT_EQ(mat_mul(Matrix<GaloisField>::identity(GF256, 4), m), m);
    EXPECT_EQ(mat_mul(m, Matrix<GaloisField>::identity(GF256, 5)), m);
  });
}

TEST(MatMul, MatchesNaiveProduct) {
  prop::for_all(22, 30, [](std::mt19937_64& rng) {
    const auto a = prop::random_matrix(GF256, 5, 6, rng);
    const auto b = prop::random_matrix(GF256, 6, 3, rng);
    EXPECT_EQ(mat_mul(a, b), oracle::matmul(a, b));
  });
}

TEST(MatMul, AdjugateOfTwoByTwoBrick) {
  const auto r = PolyRing::modp({"a", "b", "c", "d"}, 2);
  const auto a = Matrix<PolyRing>::from_rows(r, {{r.parse("a"), r.parse("b")}, {r.parse("c"), r.parse("d")}});
  const auto adj = Matrix<PolyRing>::from_rows(r, {{r.parse("d"), r.parse("b")}, {r.parse("c"), r.parse("a")}});
  const auto expected = Matrix<PolyRing>::scalar(r, 2, r.parse("a*d + b*c"));
  EXPECT_EQ(mat_mul(a, adj), expected);
  EXPECT_EQ(mat_mul(adj, a), expected);
  EXPECT_EQ(mat_det(a), r.parse("a*d + b*c"));
}

TEST(MatMul, ShapeMismatchThrows) {
  EXPECT_THROW(mat_mul(Matrix<GaloisField>(F2, 2, 3), Matrix<GaloisField>(F2, 2, 3)), InputError);
}

TEST(Kron, OneThreeTensorMIsThreeCopies) {
  prop::for_all(23, 10, [](std::mt19937_64& rng) {
    const auto m = prop::random_matrix(GF256, 3, 3, rng);
    EXPECT_EQ(kron(Matrix<GaloisField>::identity(GF256, 3), m), direct_sum<GaloisField>({m, m, m}).matrix);
  });
}

TEST(Kron, TensorWithOneByOneIdentity) {
  std::mt19937_64 rng(24);
  const auto m = prop::random_matrix(GF4, 3, 2, rng);
  EXPECT_EQ(kron(m, Matrix<GaloisField>::identity(GF4, 1)), m);
}

TEST(Kron, MixedProductRule) {
  prop::for_all(25, 50, [](std::mt19937_64& rng) {
    const auto a = prop::random_matrix(F2, 2, 2, rng), b = prop::random_matrix(F2, 2, 2, rng);
    const auto c = prop::random_matrix(F2, 2, 2, rng), d = prop::random_matrix(F2, 2, 2, rng);
    EXPECT_EQ(mat_mul(kron(a, b), kron(c, d)), kron(mat_mul(a, c), mat_mul(b, d)));
  });
}

TEST(DirectSum, SingleSummand) {
  std::mt19937_64 rng(26);
  const auto m = prop::random_matrix(GF256, 3, 3, rng);
  EXPECT_EQ(direct_sum<GaloisField>({m}).matrix, m);
}

TEST(DirectSum, IdentitiesStack) {
  const auto s = direct_sum<GaloisField>({Matrix<GaloisField>::identity(F2, 2), Matrix<GaloisField>::identity(F2, 3)});
  EXPECT_EQ(s.matrix, Matrix<GaloisField>::identity(F2, 5));
  EXPECT_EQ(s.profile.sizes, (std::vector<std::size_t>{2, 3}));
}

TEST(DirectSum, FrobeniusTargetHasDimensionTwelve) {
  std::mt19937_64 rng(27);
  const auto r = prop::random_matrix(GF256, 3, 3, rng);
  const auto s = rfrob_direct_sum(r);
  EXPECT_EQ(s.rows(), 12u);
  EXPECT_EQ(s.cols(), 12u);
}

TEST(DirectSum, EmptyListThrows) {
  EXPECT_THROW(direct_sum(std::span<const Matrix<GaloisField>>{}), InputError);
}

TEST(Determinant, IdentityIsOne) {
  EXPECT_EQ(mat_det(Matrix<GaloisField>::identity(GF256, 6)), GF256.one());
}

TEST(Determinant, MatchesLeibnizExpansion) {
  for (const auto& f : {GF256, GaloisField::extension(3, 4), GaloisField::prime(7)}) {
    prop::for_all(28, 20, [&](std::mt19937_64& rng) {
      const auto m = prop::random_matrix(f, 6, 6, rng);
      EXPECT_EQ(mat_det(m), oracle::det(m)) << f.tag();
    });
  }
}

TEST(Determinant, ThickBasesSymbolic) {
  const auto r = PolyRing::modp(brick_variables_3d(), 2);
  const auto a = generic_brick_3d(r);
  const auto expected = r.parse("(a12*a23*a31 + a13*a32*a21)^2");
  for (const auto& p : thick_basis_matrices(a).p) EXPECT_EQ(mat_det(p), expected);
}

TEST(Determinant, PolynomialRoutesAgree) {
  const auto r = PolyRing::integers({"x", "y", "z"});
  const auto m = Matrix<PolyRing>::from_rows(
      r, {{r.parse("x"), r.parse("y"), r.parse("1")}, {r.parse("z"), r.parse("x+1"), r.parse("y")},
          {r.parse("2"), r.parse("z"), r.parse("x*y")}});
  EXPECT_EQ(detail::det_cofactor(m), det_bareiss(m));
}

TEST(Rank, MatchesKernelEnumeration) {
  for (const auto& f : {F2, GF4}) {
    prop::for_all(29, 30, [&](std::mt19937_64& rng) {
      const std::size_t rows = 3 + rng() % 4, cols = 2 + rng() % 5;
      auto m = prop::random_matrix(f, rows, cols, rng);
      if (rng() % 2) {  // force dependent rows
        for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = f.add(m(0, j), m(1, j));
      }
      const auto k = rank(m);
      std::uint64_t expected = 1;
      for (std::size_t i = k; i < rows; ++i) expected *= *f.order();
      EXPECT_EQ(oracle::kernel_size(m), expected);
      EXPECT_EQ(row_kernel(m).size(), rows - k);
    });
  }
}

TEST(Rank, FractionFreeAgreesOverPolynomials) {
  const auto r = PolyRing::modp({"a", "b"}, 2);
  const auto m = Matrix<PolyRing>::from_rows(
      r, {{r.parse("a"), r.parse("b")}, {r.parse("a^2"), r.parse("a*b")}, {r.parse("1"), r.parse("0")}});
  EXPECT_EQ(rank_fraction_free(m), 2u);
  const auto n = Matrix<PolyRing>::from_rows(r, {{r.parse("a"), r.parse("b")}, {r.parse("a^2"), r.parse("a*b")}});
  EXPECT_EQ(rank_fraction_free(n), 1u);
}

TEST(Kernel, IdentityHasEmptyKernel) {
  EXPECT_TRUE(row_kernel(Matrix<GaloisField>::identity(GF256, 5)).empty());
}

TEST(Kernel, ZeroMatrixHasFullKernel) {
  EXPECT_EQ(row_kernel(Matrix<GaloisField>(GF256, 4, 4)).size(), 4u);
}

TEST(Kernel, IdentityBrickBlockMinusOne) {
  const auto brick = make_brick(Matrix<GaloisField>::identity(F2, 3));
  const auto r = assemble_block(brick, 2).matrix;
  EXPECT_EQ(row_kernel(mat_sub(r, Matrix<GaloisField>::identity(F2, r.rows()))).size(), r.rows());
}

TEST(Kernel, VectorsAnnihilate) {
  prop::for_all(30, 20, [](std::mt19937_64& rng) {
    auto m = prop::random_matrix(GF256, 6, 4, rng);
    for (const auto& v : row_kernel(m)) {
      const auto y = row_times<GaloisField>(v, m);
      for (const auto& x : y) EXPECT_TRUE(GF256.is_zero(x));
    }
  });
}

TEST(Inverse, IdentityIsSelfInverse) {
  EXPECT_EQ(mat_inverse(Matrix<GaloisField>::identity(GF256, 4)), Matrix<GaloisField>::identity(GF256, 4));
}

TEST(Inverse, ProductWithInverseIsIdentity) {
  prop::for_all(31, 20, [](std::mt19937_64& rng) {
    const auto m = random_invertible(GF256, 5, rng);
    EXPECT_EQ(mat_mul(m, mat_inverse(m)), Matrix<GaloisField>::identity(GF256, 5));
  });
}

TEST(Inverse, GeometricSeriesForNilpotentShift) {
  prop::for_all(32, 10, [](std::mt19937_64& rng) {
    const std::size_t l = 2 + rng() % 5;
    Matrix<GaloisField> t(GF256, l, l);
    for (std::size_t h = 0; h + 1 < l; ++h) t(h, h + 1) = GF256.one();
    const auto bt = mat_scale(t, GF256.random(rng));
    auto series = Matrix<GaloisField>(GF256, l, l);
    auto power = Matrix<GaloisField>::identity(GF256, l);
    for (std::size_t k = 0; k < l; ++k) {
      series = mat_add(series, power);
      power = mat_mul(power, bt);
    }
    EXPECT_TRUE(power.is_zero());
    EXPECT_EQ(mat_inverse(mat_sub(Matrix<GaloisField>::identity(GF256, l), bt)), series);
  });
}

TEST(Inverse, SingularAllOnesReportsRank) {
  const auto ones = Matrix<GaloisField>::from_rows(F2, {{F2.one(), F2.one()}, {F2.one(), F2.one()}});
  try {
    mat_inverse(ones);
    FAIL() << "expected a singularity error";
  } catch (const SingularMatrixError& e) {
    EXPECT_EQ(e.rank(), 1u);
  }
}

TEST(Charpoly, CayleyHamiltonAndDeterminant) {
  prop::for_all(33, 20, [](std::mt19937_64& rng) {
    const std::size_t n = 2 + rng() % 5;
    const auto m = prop::random_matrix(GF256, n, n, rng);
    const auto c = charpoly(m);
    ASSERT_EQ(c.size(), n + 1);
    EXPECT_EQ(c[n], GF256.one());
    EXPECT_EQ(c[0], oracle::det(m));  // (-1)^n = 1 in characteristic 2
    auto acc = Matrix<GaloisField>(GF256, n, n);
    auto power = Matrix<GaloisField>::identity(GF256, n);
    for (std::size_t k = 0; k <= n; ++k) {
      acc = mat_add(acc, mat_scale(power, c[k]));
      power = mat_mul(power, m);
    }
    EXPECT_TRUE(acc.is_zero());
  });
}

TEST(Gauge, IdentityGaugesLeaveMatrixUnchanged) {
  std::mt19937_64 rng(34);
  const auto r = prop::random_matrix(F2, 5, 5, rng);
  const BlockProfile profile{{2, 3}};
  const std::vector<Matrix<GaloisField>> gs{Matrix<GaloisField>::identity(F2, 2), Matrix<GaloisField>::identity(F2, 3)};
  EXPECT_EQ(gauge_conjugate(r, profile, std::span<const Matrix<GaloisField>>(gs)), r);
}

TEST(Gauge, ConjugationIsAGroupAction) {
  prop::for_all(35, 30, [](std::mt19937_64& rng) {
    const auto r = prop::random_matrix(F2, 5, 5, rng);
    const BlockProfile profile{{2, 3}};
    const std::vector<Matrix<GaloisField>> g{random_invertible(F2, 2, rng), random_invertible(F2, 3, rng)};
    const std::vector<Matrix<GaloisField>> h{random_invertible(F2, 2, rng), random_invertible(F2, 3, rng)};
    const std::vector<Matrix<GaloisField>> gh{mat_mul(g[0], h[0]), mat_mul(g[1], h[1])};
    const auto step = gauge_conjugate(gauge_conjugate(r, profile, std::span<const Matrix<GaloisField>>(g)), profile,
                                      std::span<const Matrix<GaloisField>>(h));
    EXPECT_EQ(step, gauge_conjugate(r, profile, std::span<const Matrix<GaloisField>>(gh)));
  });
}

TEST(Gauge, SingularGaugeIsRejected) {
  const BlockProfile profile{{1, 1}};
  const std::vector<Matrix<GaloisField>> gs{Matrix<GaloisField>(F2, 1, 1), Matrix<GaloisField>::identity(F2, 1)};
  EXPECT_THROW(gauge_conjugate(Matrix<GaloisField>::identity(F2, 2), profile, std::span<const Matrix<GaloisField>>(gs)),
               InputError);
}

TEST(Gf2Kernels, AgreeWithGenericElimination) {
  prop::for_all(36, 40, [](std::mt19937_64& rng) {
    const std::size_t rows = 1 + rng() % 90, cols = 1 + rng() % 90;
    const auto m = prop::random_matrix(F2, rows, cols, rng);
    const auto b = prop::random_matrix(F2, cols, 1 + rng() % 70, rng);
    const auto pm = Gf2Matrix::from_matrix(m);
    EXPECT_EQ(pm.to_matrix(), m);
    EXPECT_EQ(gf2_rank(pm), rank(m));
    EXPECT_EQ(gf2_mul(pm, Gf2Matrix::from_matrix(b)).to_matrix(), mat_mul(m, b));
    EXPECT_EQ(gf2_transpose(pm).to_matrix(), transpose(m));
    const auto echelon = gf2_rref(pm);
    EXPECT_EQ(echelon.reduced.to_matrix(), rref(m).reduced);
    const auto k = gf2_row_kernel(pm);
    EXPECT_EQ(k.rows(), rows - rank(m));
    EXPECT_TRUE(gf2_mul(k, pm).to_matrix().is_zero());
  });
}

TEST(MatrixAlgebraRing, CirculantEntriesCommute) {
  const MatrixAlgebra<GaloisField> alg(GF256, 4);
  prop::for_all(37, 20, [&](std::mt19937_64& rng) {
    auto circ = [&] {
      Matrix<GaloisField> c(GF256, 4, 4);
      std::vector<GfElement> row(4);
      for (auto& x : row) x = GF256.random(rng);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) c(i, j) = row[(j + 4 - i) % 4];
      return c;
    };
    const auto a = circ(), b = circ();
    EXPECT_EQ(alg.mul(a, b), alg.mul(b, a));
  });
}

TEST(MatrixAlgebraRing, FlattenRoundTrip) {
  const MatrixAlgebra<GaloisField> alg(GF4, 2);
  std::mt19937_64 rng(38);
  const auto flat = prop::random_matrix(GF4, 6, 6, rng);
  EXPECT_EQ(flatten(unflatten(flat, alg)), flat);
}
