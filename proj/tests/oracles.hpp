#pragma once

// Reference computations written from the definitions, sharing no code paths
// with the library beyond element conversion.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "cubic/boundary.hpp"
#include "cubic/galois_field.hpp"
#include "cubic/lattice.hpp"
#include "cubic/matrix.hpp"

namespace oracle {

using Poly = std::vector<std::uint32_t>;  // coefficients mod p, constant term first

// Schoolbook product in F_p[x] reduced by the monic modulus.
inline Poly gf_mul(std::uint32_t p, const Poly& modulus, const Poly& a, const Poly& b) {
  const std::size_t m = modulus.size() - 1;
  std::vector<std::uint64_t> prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  for (std::size_t k = prod.size(); k-- > m;) {
    const auto c = prod[k];
    if (c == 0) continue;
    for (std::size_t t = 0; t <= m; ++t) prod[k - m + t] = (prod[k - m + t] + (p - c) * modulus[t]) % p;
  }
  Poly out(m, 0);
  for (std::size_t i = 0; i < m && i < prod.size(); ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return out;
}

inline cubic::GfElement mul(const cubic::GaloisField& f, const cubic::GfElement& a, const cubic::GfElement& b) {
  const auto& s = f.spec();
  return f.from_coeffs(gf_mul(s.p, s.modulus, f.coeffs(a), f.coeffs(b)));
}

// Leibniz expansion over all permutations; n <= 8.
inline cubic::GfElement det(const cubic::Matrix<cubic::GaloisField>& m) {
  const auto& f = m.ring();
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto total = f.zero();
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    auto term = f.one();
    for (std::size_t i = 0; i < n; ++i) term = mul(f, term, m(i, perm[i]));
    total = inversions % 2 ? f.sub(total, term) : f.add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

template <class R>
cubic::Matrix<R> matmul(const cubic::Matrix<R>& a, const cubic::Matrix<R>& b) {
  const auto& r = a.ring();
  cubic::Matrix<R> c(r, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      auto s = r.zero();
      for (std::size_t k = 0; k < a.cols(); ++k) s = r.add(s, r.mul(a(i, k), b(k, j)));
      c(i, j) = s;
    }
  return c;
}

// Number of x in F^n with x m = 0, by enumeration; q^n <= 2^20.
inline std::uint64_t kernel_size(const cubic::Matrix<cubic::GaloisField>& m) {
  const auto& f = m.ring();
  const std::uint64_t q = *f.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) total *= q;
  std::uint64_t count = 0;
  std::vector<cubic::GfElement> x(m.rows());
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    auto t = idx;
    for (auto& xi : x) {
      xi = f.from_index(t % q);
      t /= q;
    }
    bool zero = true;
    for (std::size_t j = 0; j < m.cols() && zero; ++j) {
      auto s = f.zero();
      for (std::size_t i = 0; i < m.rows(); ++i) s = f.add(s, f.mul(x[i], m(i, j)));
      zero = f.is_zero(s);
    }
    if (zero) ++count;
  }
  return count;
}

// Block geometry from first principles: axis i owns line_count * thin_i
// coordinates after all lower axes; the line of v along axis i is the lex rank
// of v with coordinate i removed, lowest remaining axis most significant.
struct Geometry {
  std::vector<std::size_t> edges, thin, offset;
  std::size_t total = 0;

  Geometry(std::vector<std::size_t> e, std::vector<std::size_t> t) : edges(std::move(e)), thin(std::move(t)) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      offset.push_back(total);
      std::size_t lines = 1;
      for (std::size_t j = 0; j < edges.size(); ++j)
        if (j != i) lines *= edges[j];
      total += lines * thin[i];
    }
  }

  std::size_t line(std::size_t axis, const cubic::Vertex& v) const {
    std::size_t r = 0;
    for (std::size_t j = 0; j < edges.size(); ++j)
      if (j != axis) r = r * edges[j] + v[j];
    return r;
  }

  // Brick row order: axis 0 components first.
  std::vector<std::size_t> indices(const cubic::Vertex& v) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (std::size_t k = 0; k < thin[i]; ++k) out.push_back(offset[i] + line(i, v) * thin[i] + k);
    return out;
  }

  std::vector<cubic::Vertex> vertices_by_sum() const {
    std::vector<cubic::Vertex> all{cubic::Vertex(edges.size(), 0)};
    for (std::size_t i = 0; i < edges.size(); ++i) {
      std::vector<cubic::Vertex> next;
      for (const auto& v : all)
        for (std::size_t c = 0; c < edges[i]; ++c) {
          auto w = v;
          w[i] = c;
          next.push_back(w);
        }
      all = std::move(next);
    }
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
      return std::accumulate(a.begin(), a.end(), std::size_t{0}) < std::accumulate(b.begin(), b.end(), std::size_t{0});
    });
    return all;
  }
};

// The N x N matrix of the brick acting at v and as the identity elsewhere.
template <class R>
cubic::Matrix<R> embedding(const cubic::Matrix<R>& brick, const Geometry& g, const cubic::Vertex& v) {
  const auto& r = brick.ring();
  auto e = cubic::Matrix<R>::identity(r, g.total);
  const auto idx = g.indices(v);
  for (const auto i : idx) e(i, i) = r.zero();
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) e(idx[a], idx[b]) = brick(a, b);
  return e;
}

template <class R>
cubic::Matrix<R> block(const cubic::Matrix<R>& brick, const Geometry& g, const std::vector<cubic::Vertex>& order) {
  auto m = cubic::Matrix<R>::identity(brick.ring(), g.total);
  for (const auto& v : order) m = matmul(m, embedding(brick, g, v));
  return m;
}

// Enumerates all inputs x over F_2 and counts those meeting the conditions on
// (x, x r); returns the exponent of the count.
inline std::size_t census_exponent_f2(const cubic::Matrix<cubic::GaloisField>& r, const Geometry& g,
                                      const cubic::BoundaryConditions& bcs) {
  const auto& f = r.ring();
  const std::size_t n = g.total;
  std::vector<std::size_t> axis(n);
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (std::size_t k = g.offset[i]; k < (i + 1 < g.edges.size() ? g.offset[i + 1] : n); ++k) axis[k] = i;
  std::vector<std::uint64_t> cols(n, 0);  // column j of r as a bit mask over rows
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (f.is_one(r(i, j))) cols[j] |= std::uint64_t{1} << i;
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      const bool xj = (x >> j) & 1U;
      const bool yj = __builtin_popcountll(x & cols[j]) & 1;
      if (bcs[axis[j]] == cubic::Boundary::Periodic) ok = xj == yj;
      if (bcs[axis[j]] == cubic::Boundary::ZeroInput) ok = !xj;
    }
    if (ok) ++count;
  }
  std::size_t e = 0;
  while ((std::uint64_t{1} << e) < count) ++e;
  return e;
}

}  // namespace oracle
