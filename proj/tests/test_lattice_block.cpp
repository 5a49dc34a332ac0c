#include <gtest/gtest.h>

#include "cubic/errors.hpp"
#include "cubic/lattice.hpp"
#include "cubic/multipoly.hpp"
#include "oracles.hpp"
#include "property.hpp"

using namespace cubic;

namespace {

const GaloisField F2 = GaloisField::prime(2);
const GaloisField GF4 = GaloisField::extension(2, 2);
const GaloisField GF16 = GaloisField::extension(2, 4);

Matrix<PolyRing> poly_matrix(const PolyRing& r, const std::vector<std::vector<const char*>>& rows) {
  std::vector<std::vector<MultiPoly>> m;
  for (const auto& row : rows) {
    m.emplace_back();
    for (const auto* s : row) m.back().push_back(r.parse(s));
  }
  return Matrix<PolyRing>::from_rows(r, m);
}

// The 2 x 2 block of the brick ((a, b), (c, d)) as printed, in characteristic zero.
Matrix<PolyRing> printed_r2(const PolyRing& z) {
  return poly_matrix(z, {{"a^2", "2*a*b*c", "b*d", "a*b*d + b^2*c"},
                         {"0", "a^2", "b", "a*b"},
                         {"a*c", "a*c*d + b*c^2", "d^2", "2*b*c*d"},
                         {"c", "c*d", "0", "d^2"}});
}

// A acting on spaces (i, j) of F^4, zero-based.
Matrix<PolyRing> a_on(const Matrix<PolyRing>& a, std::size_t i, std::size_t j) {
  auto m = Matrix<PolyRing>::identity(a.ring(), 4);
  const std::size_t idx[2] = {i, j};
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t t = 0; t < 2; ++t) m(idx[s], idx[t]) = a(s, t);
  return m;
}

BrickSpec<GaloisField> random_brick(const GaloisField& f, std::vector<std::size_t> thin, std::mt19937_64& rng) {
  std::size_t n = 0;
  for (auto t : thin) n += t;
  return {thin, prop::random_matrix(f, n, n, rng)};
}

}  // namespace

TEST(Lines, ThreeDimensionalCube) {
  const auto p = enumerate_lines(LatticeSpec::cube(3, 2));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(p.line_count(i), 4u);
  EXPECT_EQ(p.total(), 12u);
}

TEST(Lines, TwoDimensionalSquareActsInF4) {
  const auto p = enumerate_lines(LatticeSpec::cube(2, 2));
  EXPECT_EQ(p.thick_dim(0), 2u);
  EXPECT_EQ(p.thick_dim(1), 2u);
}

TEST(Lines, FourDimensionalCube) {
  const auto p = enumerate_lines(LatticeSpec::cube(4, 2));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(p.thick_dim(i), 8u);
}

TEST(Lines, IndicesAgreeWithFirstPrinciples) {
  for (const auto& spec : {LatticeSpec{{2, 3, 2}, {1, 2, 1}}, LatticeSpec{{3, 3}, {2, 1}}, LatticeSpec::cube(4, 2)}) {
    const ThickProfile p(spec);
    const oracle::Geometry g(spec.edges, spec.thin_dims);
    ASSERT_EQ(p.total(), g.total);
    for (const auto& v : all_vertices(spec)) EXPECT_EQ(detail::brick_indices(p, v), g.indices(v));
  }
}

TEST(Lines, RejectsZeroEdge) {
  EXPECT_THROW(LatticeSpec({2, 0}, {1, 1}).validate(), InputError);
  EXPECT_THROW(LatticeSpec({2, 2}, {1}).validate(), InputError);
}

TEST(Embedding, IdentityBrickGivesIdentity) {
  const auto brick = make_brick(Matrix<GaloisField>::identity(GF4, 3));
  const ThickProfile p(LatticeSpec::cube(3, 2));
  EXPECT_EQ(embed_brick_at(brick, {1, 0, 1}, p), Matrix<GaloisField>::identity(GF4, 12));
}

TEST(Embedding, SingleVertexIsTheBrick) {
  std::mt19937_64 rng(41);
  const auto brick = random_brick(GF16, {1, 1}, rng);
  const ThickProfile p(LatticeSpec::cube(2, 1));
  EXPECT_EQ(embed_brick_at(brick, {0, 0}, p), brick.entries);
}

TEST(Embedding, MatchesFirstPrinciplesEmbedding) {
  prop::for_all(42, 10, [](std::mt19937_64& rng) {
    const LatticeSpec spec{{2, 3, 2}, {1, 2, 1}};
    const auto brick = random_brick(GF4, spec.thin_dims, rng);
    const ThickProfile p(spec);
    const oracle::Geometry g(spec.edges, spec.thin_dims);
    for (const auto& v : all_vertices(spec)) EXPECT_EQ(embed_brick_at(brick, v, p), oracle::embedding(brick.entries, g, v));
  });
}

TEST(Embedding, DisjointVerticesCommute) {
  // (0, 1, 0) and (1, 0, 1) share no line: every pair of coordinates differs in two axes.
  prop::for_all(43, 10, [](std::mt19937_64& rng) {
    const auto brick = random_brick(GF16, {1, 1, 1}, rng);
    const ThickProfile p(LatticeSpec::cube(3, 2));
    const auto a = embed_brick_at(brick, {0, 1, 0}, p);
    const auto b = embed_brick_at(brick, {1, 0, 1}, p);
    EXPECT_EQ(mat_mul(a, b), mat_mul(b, a));
  });
}

TEST(Block, TwoByTwoOverIntegersMatchesPrintedTable) {
  const auto z = PolyRing::integers({"a", "b", "c", "d"});
  const auto brick = make_brick(poly_matrix(z, {{"a", "b"}, {"c", "d"}}));
  const auto r = assemble_block(brick, 2).matrix;
  const auto expected = printed_r2(z);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(r(i, j), expected(i, j)) << "entry (" << i << "," << j << ")";
}

TEST(Block, ProductOfFourEmbeddedCopies) {
  const auto z = PolyRing::integers({"a", "b", "c", "d"});
  const auto a = poly_matrix(z, {{"a", "b"}, {"c", "d"}});
  const auto product = mat_mul(mat_mul(a_on(a, 0, 2), a_on(a, 0, 3)), mat_mul(a_on(a, 1, 2), a_on(a, 1, 3)));
  EXPECT_EQ(product, printed_r2(z));
  EXPECT_EQ(assemble_block(make_brick(a), 2).matrix, product);
}

TEST(Block, MatchesFirstPrinciplesProduct) {
  prop::for_all(44, 12, [](std::mt19937_64& rng) {
    const auto& f = rng() % 2 ? F2 : GF4;
    const std::vector<LatticeSpec> specs{LatticeSpec::cube(2, 3), LatticeSpec::cube(3, 2), LatticeSpec{{2, 3}, {2, 1}},
                                         LatticeSpec{{2, 2, 3}, {1, 1, 2}}};
    const auto& spec = specs[rng() % specs.size()];
    const auto brick = random_brick(f, spec.thin_dims, rng);
    const oracle::Geometry g(spec.edges, spec.thin_dims);
    EXPECT_EQ(assemble_block(brick, spec).matrix, oracle::block(brick.entries, g, g.vertices_by_sum()));
  });
}

TEST(Block, IdentityBrickGivesIdentityBlock) {
  for (const auto& spec : {LatticeSpec::cube(2, 3), LatticeSpec::cube(3, 2), LatticeSpec{{2, 3, 2}, {1, 1, 1}}}) {
    const auto brick = make_brick(Matrix<GaloisField>::identity(F2, spec.dim()));
    const auto r = assemble_block(brick, spec).matrix;
    EXPECT_EQ(r, Matrix<GaloisField>::identity(F2, r.rows()));
  }
}

TEST(Block, RejectsNonLinearExtension) {
  const auto brick = make_brick(Matrix<GaloisField>::identity(F2, 2));
  std::vector<Vertex> order{{1, 1}, {0, 0}, {0, 1}, {1, 0}};
  EXPECT_THROW(assemble_block(brick, LatticeSpec::cube(2, 2), order), InputError);
}

TEST(Block, RejectsThinDimensionMismatch) {
  const auto brick = make_brick(Matrix<GaloisField>::identity(F2, 2));
  EXPECT_THROW(assemble_block(brick, LatticeSpec{{2, 2}, {1, 2}}), InputError);
}

TEST(LinearExtensions, RandomExtensionsAreValid) {
  prop::for_all(45, 30, [](std::mt19937_64& rng) {
    const auto spec = LatticeSpec::cube(2 + rng() % 2, 2 + rng() % 2);
    const auto order = random_linear_extension(spec, rng);
    EXPECT_TRUE(is_linear_extension(spec, order));
  });
  EXPECT_TRUE(is_linear_extension(LatticeSpec::cube(3, 2), default_vertex_order(LatticeSpec::cube(3, 2))));
}

TEST(LinearExtensions, TwoRandomExtensionsGiveEqualBlocks) {
  prop::for_all(46, 10, [](std::mt19937_64& rng) {
    const auto spec = LatticeSpec::cube(3, 2);
    const auto brick = random_brick(GF16, spec.thin_dims, rng);
    const auto r1 = assemble_block(brick, spec, random_linear_extension(spec, rng)).matrix;
    const auto r2 = assemble_block(brick, spec, random_linear_extension(spec, rng)).matrix;
    EXPECT_EQ(r1, r2);
  });
}

TEST(Ordering, ColexIsASlotPermutationOfLex) {
  std::mt19937_64 rng(47);
  const auto spec = LatticeSpec::cube(3, 2);
  const auto brick = random_brick(GF4, spec.thin_dims, rng);
  const auto lex = assemble_block(brick, spec, std::nullopt, OrderingSpec::lex());
  const auto colex = assemble_block(brick, spec, std::nullopt, OrderingSpec::colex());
  // Same operator, coordinates renamed: compare entry by entry through the vertex-line map.
  for (const auto& v : all_vertices(spec))
    for (const auto& w : all_vertices(spec)) {
      const auto iv = detail::brick_indices(lex.profile, v), iw = detail::brick_indices(lex.profile, w);
      const auto jv = detail::brick_indices(colex.profile, v), jw = detail::brick_indices(colex.profile, w);
      for (std::size_t a = 0; a < iv.size(); ++a)
        for (std::size_t b = 0; b < iw.size(); ++b) EXPECT_EQ(lex.matrix(iv[a], iw[b]), colex.matrix(jv[a], jw[b]));
    }
}

TEST(Evolution, IdentityBrickStaysIdentity) {
  const auto steps = evolve(make_brick(Matrix<GaloisField>::identity(F2, 3)), 2, 2);
  for (const auto& s : steps) EXPECT_EQ(s.matrix, Matrix<GaloisField>::identity(F2, s.matrix.rows()));
  EXPECT_EQ(steps.back().matrix.rows(), 48u);
}

TEST(Evolution, OneStepInThreeDimensionsHasDimensionTwelve) {
  std::mt19937_64 rng(48);
  const auto steps = evolve(random_brick(GF16, {1, 1, 1}, rng), 1, 2);
  EXPECT_EQ(steps.back().matrix.rows(), 12u);
  EXPECT_EQ(steps.back().as_brick().thin_dims, (std::vector<std::size_t>{4, 4, 4}));
}

TEST(Evolution, CapBreachThrows) {
  EXPECT_THROW(evolve(make_brick(Matrix<GaloisField>::identity(F2, 3)), 3, 2, 100), ResourceError);
  EXPECT_THROW(evolve(make_brick(Matrix<GaloisField>::identity(F2, 3)), 0, 2), InputError);
}
