#include <gtest/gtest.h>

#include "cubic/decomp3d.hpp"
#include "cubic/errors.hpp"
#include "cubic/galois_field.hpp"
#include "cubic/identity_check.hpp"
#include "cubic/multipoly.hpp"
#include "oracles.hpp"
#include "property.hpp"

using namespace cubic;

namespace {

// Trial division by every monic polynomial of degree 1..m/2.
bool irreducible_by_division(std::uint32_t p, const std::vector<std::uint32_t>& f) {
  const std::size_t m = f.size() - 1;
  for (std::size_t d = 1; d <= m / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::int64_t> g(d + 1, 0);
      auto t = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::int64_t>(t % p);
        t /= p;
      }
      g[d] = 1;
      std::vector<std::int64_t> r(f.begin(), f.end());
      for (std::size_t k = m + 1; k-- > d;) {
        const auto c = ((r[k] % p) + p) % p;
        for (std::size_t j = 0; j <= d; ++j) r[k - d + j] = ((r[k - d + j] - c * g[j]) % p + p) % p;
      }
      if (std::all_of(r.begin(), r.end(), [&](auto x) { return x % p == 0; })) return false;
    }
  }
  return true;
}

}  // namespace

TEST(FieldConstruction, PrimeFieldModulusIsX) {
  const auto s = build_extension_field(2, 1);
  EXPECT_EQ(s.modulus, (std::vector<std::uint32_t>{0, 1}));
}

TEST(FieldConstruction, QuadraticOverF2IsTheUniqueIrreducible) {
  // Of x^2, x^2+1, x^2+x, x^2+x+1 only the last has no root in F_2.
  int irreducible = 0;
  for (std::uint32_t c0 = 0; c0 < 2; ++c0)
    for (std::uint32_t c1 = 0; c1 < 2; ++c1) {
      const bool root0 = c0 == 0;
      const bool root1 = (1 + c1 + c0) % 2 == 0;
      if (!root0 && !root1) {
        ++irreducible;
        EXPECT_EQ(build_extension_field(2, 2).modulus, (std::vector<std::uint32_t>{c0, c1, 1}));
      }
    }
  EXPECT_EQ(irreducible, 1);
}

TEST(FieldConstruction, QuadraticOverF3IsLowestIrreducible) {
  std::vector<std::uint32_t> lowest;
  for (std::uint32_t idx = 0; idx < 9 && lowest.empty(); ++idx) {
    std::vector<std::uint32_t> f{idx % 3, idx / 3, 1};
    bool has_root = false;
    for (std::uint32_t x = 0; x < 3; ++x) has_root = has_root || (f[0] + f[1] * x + x * x) % 3 == 0;
    if (!has_root) lowest = f;
  }
  EXPECT_EQ(build_extension_field(3, 2).modulus, lowest);
}

TEST(FieldConstruction, ModuliAgreeWithTrialDivision) {
  for (const auto& [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {2, 3}, {2, 4}, {2, 5}, {2, 8}, {3, 3}, {3, 4}, {5, 2}, {5, 3}, {7, 2}}) {
    const auto s = build_extension_field(p, m);
    ASSERT_EQ(s.modulus.size(), m + 1);
    EXPECT_TRUE(irreducible_by_division(p, s.modulus)) << p << "^" << m;
    EXPECT_TRUE(is_irreducible(p, s.modulus));
  }
  EXPECT_FALSE(is_irreducible(2, std::vector<std::uint32_t>{1, 0, 1}));   // (x+1)^2
  EXPECT_FALSE(is_irreducible(2, std::vector<std::uint32_t>{1, 1, 1, 1}));  // root at 1
}

TEST(FieldConstruction, RejectsCompositeCharacteristic) {
  EXPECT_THROW(GaloisField::extension(4, 1), InputError);
  EXPECT_THROW(GaloisField::extension(2, 0), InputError);
}

TEST(FieldConstruction, OrderAndTag) {
  EXPECT_EQ(GaloisField::extension(2, 16).order(), std::optional<std::uint64_t>(65536));
  EXPECT_EQ(GaloisField::extension(3, 4).order(), std::optional<std::uint64_t>(81));
  EXPECT_FALSE(GaloisField::extension(5, 32).order().has_value());
}

TEST(FieldArithmetic, MultiplicationMatchesSchoolbookOracle) {
  for (const auto& f : {GaloisField::extension(2, 8), GaloisField::extension(2, 16), GaloisField::extension(3, 4),
                        GaloisField::extension(5, 16), GaloisField::extension(7, 3), GaloisField::prime(65521)}) {
    prop::for_all(11, 200, [&](std::mt19937_64& rng) {
      const auto a = f.random(rng);
      const auto b = f.random(rng);
      ASSERT_EQ(f.mul(a, b), oracle::mul(f, a, b)) << f.tag();
    });
  }
}

TEST(FieldArithmetic, RingAxioms) {
  for (const auto& f : {GaloisField::extension(2, 8), GaloisField::extension(3, 4), GaloisField::prime(5),
                        GaloisField::extension(2, 32)}) {
    prop::for_all(12, 200, [&](std::mt19937_64& rng) {
      const auto a = f.random(rng), b = f.random(rng), c = f.random(rng);
      EXPECT_EQ(f.add(a, b), f.add(b, a));
      EXPECT_EQ(f.mul(a, b), f.mul(b, a));
      EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
      EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      EXPECT_EQ(f.add(a, f.neg(a)), f.zero());
      EXPECT_EQ(f.sub(f.add(a, b), b), a);
      EXPECT_EQ(f.mul(a, f.one()), a);
      if (!f.is_zero(a)) {
        EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
      }
    });
  }
}

TEST(FieldArithmetic, FrobeniusIsAdditiveAndMatchesPower) {
  for (const auto& f : {GaloisField::extension(2, 8), GaloisField::extension(3, 4), GaloisField::extension(5, 3)}) {
    prop::for_all(13, 100, [&](std::mt19937_64& rng) {
      const auto a = f.random(rng), b = f.random(rng);
      EXPECT_EQ(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
      EXPECT_EQ(f.frobenius(a), f.pow(a, f.characteristic()));
      EXPECT_EQ(f.frobenius(a, f.degree()), a);
    });
  }
}

TEST(FieldArithmetic, IndexRoundTrip) {
  const auto f = GaloisField::extension(3, 4);
  for (std::uint64_t i = 0; i < 81; ++i) EXPECT_EQ(f.to_index(f.from_index(i)), i);
}

TEST(FieldArithmetic, InverseOfZeroThrows) {
  const auto f = GaloisField::extension(2, 8);
  EXPECT_THROW(f.inv(f.zero()), InputError);
}

TEST(SquareRoot, OneInF2) {
  const auto f = GaloisField::prime(2);
  EXPECT_EQ(sqrt_char2(f, f.one()), f.one());
}

TEST(SquareRoot, ZeroInExtensions) {
  for (std::uint32_t m : {1u, 4u, 8u, 16u}) {
    const auto f = GaloisField::extension(2, m);
    EXPECT_EQ(sqrt_char2(f, f.zero()), f.zero());
  }
}

TEST(SquareRoot, OmegaInGF4IsOmegaPlusOne) {
  const auto f = GaloisField::extension(2, 2);
  // Square table of GF(4), inverted.
  for (std::uint64_t i = 0; i < 4; ++i) {
    const auto x = f.from_index(i);
    EXPECT_EQ(sqrt_char2(f, f.mul(x, x)), x);
  }
  const auto w = f.generator();
  EXPECT_EQ(sqrt_char2(f, w), f.add(w, f.one()));
}

TEST(SquareRoot, SquaresBackEverywhere) {
  const auto f = GaloisField::extension(2, 16);
  prop::for_all(14, 100, [&](std::mt19937_64& rng) {
    const auto x = f.random(rng);
    const auto y = sqrt_char2(f, x);
    EXPECT_EQ(f.mul(y, y), x);
  });
}

TEST(SquareRoot, OddCharacteristicUnsupported) {
  const auto f = GaloisField::prime(3);
  EXPECT_THROW(sqrt_char2(f, f.one()), UnsupportedError);
}

TEST(Polynomials, RingAxiomsOverIntegersAndF3) {
  for (const auto& r : {PolyRing::integers({"x", "y", "z"}), PolyRing::modp({"x", "y", "z"}, 3)}) {
    const auto gen = [&](std::mt19937_64& rng) {
      std::vector<Term> terms;
      for (int t = 0; t < 4; ++t) {
        Term term;
        term.coeff = static_cast<std::int64_t>(rng() % 7) - 3;
        for (int v = 0; v < 3; ++v) term.mono.e[v] = static_cast<std::uint8_t>(rng() % 3);
        terms.push_back(term);
      }
      return r.from_terms(terms);
    };
    prop::for_all(15, 100, [&](std::mt19937_64& rng) {
      const auto a = gen(rng), b = gen(rng), c = gen(rng);
      EXPECT_EQ(r.mul(a, b), r.mul(b, a));
      EXPECT_EQ(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
      EXPECT_EQ(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
      EXPECT_TRUE(r.sub(a, a).is_zero());
      if (!b.is_zero()) {
        EXPECT_EQ(r.divide_exact(r.mul(a, b), b), std::optional<MultiPoly>(a));
      }
    });
  }
}

TEST(Polynomials, CanonicalFormHasNoZeroTerms) {
  const auto r = PolyRing::modp({"a"}, 2);
  const auto f = r.parse("a^2 + a^2 + a");
  EXPECT_EQ(f, r.parse("a"));
  const auto z = PolyRing::integers({"a", "b"});
  EXPECT_EQ(z.to_string(z.parse("(a+b)^2 - a^2 - b^2")), "2*a*b");
}

TEST(Polynomials, SpecializationIsAHomomorphism) {
  const auto r = PolyRing::modp({"x", "y"}, 2);
  const auto f = GaloisField::extension(2, 8);
  const auto p = r.parse("x^3*y + x + 1");
  const auto q = r.parse("y^2 + x*y");
  prop::for_all(16, 50, [&](std::mt19937_64& rng) {
    const std::vector<GfElement> v{f.random(rng), f.random(rng)};
    EXPECT_EQ(poly_specialize(r, r.mul(p, q), f, v), f.mul(poly_specialize(r, p, f, v), poly_specialize(r, q, f, v)));
    EXPECT_EQ(poly_specialize(r, r.add(p, q), f, v), f.add(poly_specialize(r, p, f, v), poly_specialize(r, q, f, v)));
  });
}

TEST(Specialize, ProductWithZeroFactor) {
  const auto r = PolyRing::modp({"a12", "a23"}, 2);
  const auto f = GaloisField::prime(2);
  EXPECT_EQ(poly_specialize(r, r.parse("a12*a23"), f, std::map<std::string, GfElement>{{"a12", f.one()}, {"a23", f.zero()}}),
            f.zero());
}

TEST(Specialize, FrobeniusFixedPointsOfF2) {
  const auto r = PolyRing::modp({"a11"}, 2);
  const auto f = GaloisField::prime(2);
  for (const auto& x : {f.zero(), f.one()}) {
    EXPECT_EQ(poly_specialize(r, r.parse("a11^2 + a11"), f, std::map<std::string, GfElement>{{"a11", x}}), f.zero());
  }
}

TEST(Specialize, DeterminantExpressionMatchesNumericDeterminant) {
  const auto r = PolyRing::modp(brick_variables_3d(), 2);
  const auto f = GaloisField::extension(2, 8);
  const auto expr = r.parse("(a12*a23*a31 + a13*a32*a21)^2");
  prop::for_all(17, 20, [&](std::mt19937_64& rng) {
    std::vector<GfElement> v(9);
    for (auto& x : v) x = f.random(rng);
    const auto a = Matrix<GaloisField>(f, 3, 3, v);
    const auto expected = poly_specialize(r, expr, f, v);
    for (const auto& p : thick_basis_matrices(a).p) EXPECT_EQ(oracle::det(p), expected);
  });
}

TEST(IdentityCheck, SyntacticEqualityVerifiesInOneTrial) {
  const auto r = PolyRing::modp({"a11"}, 2);
  const Matrix<PolyRing> m(r, 1, 1, {r.parse("a11^2 + a11")});
  const auto v = random_identity_check(m, m, 1, GaloisField::extension(2, 16), 3);
  EXPECT_TRUE(v.verified());
  EXPECT_EQ(v.trials, 1u);
}

TEST(IdentityCheck, ConstantDiscrepancyFalsifiedWithWitness) {
  const auto r = PolyRing::modp({"a11"}, 2);
  const Matrix<PolyRing> lhs(r, 1, 1, {r.parse("a11")});
  const Matrix<PolyRing> rhs(r, 1, 1, {r.parse("a11 + 1")});
  const auto v = random_identity_check(lhs, rhs, 8, GaloisField::extension(2, 16), 3);
  EXPECT_TRUE(v.falsified());
  EXPECT_EQ(v.witness.count("a11"), 1u);
}

TEST(IdentityCheck, FailureBoundIsSchwartzZippel) {
  EXPECT_DOUBLE_EQ(schwartz_zippel_log2_bound(2, 16, 32), 32 * (1 - 16.0));
  const auto r = PolyRing::modp({"x", "y"}, 2);
  const Matrix<PolyRing> lhs(r, 1, 1, {r.parse("(x+y)^2")});
  const Matrix<PolyRing> rhs(r, 1, 1, {r.parse("x^2 + y^2")});
  const auto v = random_identity_check(lhs, rhs, 32, GaloisField::extension(2, 16), 5, 2);
  EXPECT_TRUE(v.verified());
  EXPECT_LE(v.log2_failure_bound, -100.0);
}

TEST(IdentityCheck, DegreeBoundMustBeBelowFieldSize) {
  const auto r = PolyRing::modp({"x"}, 2);
  const Matrix<PolyRing> m(r, 1, 1, {r.parse("x^5")});
  EXPECT_THROW(random_identity_check(m, m, 4, GaloisField::extension(2, 2), 1, 5), InputError);
}
