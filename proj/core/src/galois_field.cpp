#include "cubic/galois_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "cubic/errors.hpp"

namespace cubic {
namespace {

// Dense univariate polynomials over F_p, constant term first, no trailing zeros.
using UPoly = std::vector<std::uint32_t>;

void trim(UPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t mulmod(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(a * b % p);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime, a != 0.
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

UPoly poly_sub(const UPoly& a, const UPoly& b, std::uint32_t p) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const std::uint32_t x = i < a.size() ? a[i] : 0;
    const std::uint32_t y = i < b.size() ? b[i] : 0;
    r[i] = (x + p - y) % p;
  }
  trim(r);
  return r;
}

UPoly poly_mul(const UPoly& a, const UPoly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  trim(r);
  return r;
}

// Returns (quotient, remainder) of a / b, b nonzero.
std::pair<UPoly, UPoly> poly_divmod(UPoly a, const UPoly& b, std::uint32_t p) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  UPoly q(a.size() - b.size() + 1, 0);
  for (std::size_t k = a.size() - 1;; --k) {
    const std::uint32_t coef = mulmod(a[k], lead_inv, p);
    const std::size_t shift = k - (b.size() - 1);
    q[shift] = coef;
    if (coef != 0) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        a[shift + j] = (a[shift + j] + p - mulmod(coef, b[j], p)) % p;
      }
    }
    if (k == b.size() - 1) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}

UPoly poly_mod(const UPoly& a, const UPoly& f, std::uint32_t p) { return poly_divmod(a, f, p).second; }

UPoly poly_gcd(UPoly a, UPoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint32_t li = inv_mod(a.back(), p);
    for (auto& c : a) c = mulmod(c, li, p);
  }
  return a;
}

UPoly poly_powmod(UPoly base, std::uint64_t e, const UPoly& f, std::uint32_t p) {
  UPoly result{1};
  base = poly_mod(base, f, p);
  while (e > 0) {
    if (e & 1U) result = poly_mod(poly_mul(result, base, p), f, p);
    e >>= 1U;
    if (e > 0) base = poly_mod(poly_mul(base, base, p), f, p);
  }
  return result;
}

// x^(p^k) mod f by k successive p-th powers.
UPoly x_pow_p_pow(std::uint32_t k, const UPoly& f, std::uint32_t p) {
  UPoly h = poly_mod(UPoly{0, 1}, f, p);
  for (std::uint32_t i = 0; i < k; ++i) h = poly_powmod(h, p, f, p);
  return h;
}

std::vector<std::uint32_t> prime_divisors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic) {
  UPoly f(monic.begin(), monic.end());
  trim(f);
  if (f.size() < 2) return false;
  const auto m = static_cast<std::uint32_t>(f.size() - 1);
  if (m == 1) return true;
  const UPoly x{0, 1};
  if (poly_sub(x_pow_p_pow(m, f, p), x, p).size() != 0) return false;
  for (const std::uint32_t q : prime_divisors(m)) {
    const UPoly h = poly_sub(x_pow_p_pow(m / q, f, p), x, p);
    if (poly_gcd(f, h, p).size() != 1) return false;
  }
  return true;
}

ExtFieldSpec build_extension_field(std::uint32_t p, std::uint32_t m) {
  if (!is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
  if (p > kMaxCharacteristic) throw InputError("field characteristic exceeds supported bound");
  if (m < 1 || m > kMaxExtensionDegree) {
    throw InputError("extension degree must be in [1, " + std::to_string(kMaxExtensionDegree) + "]");
  }
  std::vector<std::uint32_t> candidate(m + 1, 0);
  candidate[m] = 1;
  // Base-p counter over c_0 .. c_{m-1}, c_{m-1} most significant.
  while (true) {
    if (is_irreducible(p, candidate)) return ExtFieldSpec{p, m, candidate};
    std::size_t i = 0;
    while (i < m && ++candidate[i] == p) candidate[i++] = 0;
    if (i == m) break;
  }
  throw InvariantViolation("no irreducible polynomial found");
}

GaloisField::GaloisField() : GaloisField(ExtFieldSpec{}) {}

GaloisField::GaloisField(ExtFieldSpec spec) {
  if (!is_prime(spec.p)) throw InputError("field characteristic " + std::to_string(spec.p) + " is not prime");
  if (spec.p > kMaxCharacteristic) throw InputError("field characteristic exceeds supported bound");
  if (spec.m < 1 || spec.m > kMaxExtensionDegree) throw InputError("unsupported extension degree");
  if (spec.modulus.size() != spec.m + 1 || spec.modulus.back() != 1) {
    throw InputError("field modulus must be monic of degree m");
  }
  for (const auto c : spec.modulus) {
    if (c >= spec.p) throw InputError("field modulus coefficient out of range");
  }
  if (!is_irreducible(spec.p, spec.modulus)) throw InputError("field modulus is not irreducible");
  p_ = spec.p;
  m_ = spec.m;
  if (p_ == 2) {
    for (std::uint32_t i = 0; i < m_; ++i) {
      if (spec.modulus[i]) modulus_bits_ |= std::uint64_t{1} << i;
    }
  }
  spec_ = std::make_shared<const ExtFieldSpec>(std::move(spec));
}

GaloisField GaloisField::prime(std::uint32_t p) { return GaloisField(build_extension_field(p, 1)); }

GaloisField GaloisField::extension(std::uint32_t p, std::uint32_t m) {
  return GaloisField(build_extension_field(p, m));
}

std::optional<std::uint64_t> GaloisField::order() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    if (q > std::numeric_limits<std::uint64_t>::max() / p_) return std::nullopt;
    q *= p_;
  }
  return q;
}

double GaloisField::log2_order() const { return m_ * std::log2(static_cast<double>(p_)); }

std::string GaloisField::tag() const {
  if (m_ == 1) return "F_" + std::to_string(p_);
  return "GF(" + std::to_string(p_) + "^" + std::to_string(m_) + ")";
}

GfElement GaloisField::one() const {
  GfElement e;
  e.c[0] = 1;
  return e;
}

GfElement GaloisField::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  GfElement e;
  e.c[0] = static_cast<std::uint16_t>(r);
  return e;
}

GfElement GaloisField::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > m_) {
    // Accept trailing zeros only.
    for (std::size_t i = m_; i < coeffs.size(); ++i) {
      if (coeffs[i] != 0) throw InputError("field element has more coefficients than the extension degree");
    }
  }
  GfElement e;
  for (std::size_t i = 0; i < std::min<std::size_t>(coeffs.size(), m_); ++i) {
    if (coeffs[i] >= p_) throw InputError("field element coefficient out of range");
    e.c[i] = static_cast<std::uint16_t>(coeffs[i]);
  }
  return e;
}

std::vector<std::uint32_t> GaloisField::coeffs(const GfElement& a) const {
  return std::vector<std::uint32_t>(a.c.begin(), a.c.begin() + m_);
}

GfElement GaloisField::from_index(std::uint64_t index) const {
  GfElement e;
  for (std::uint32_t i = 0; i < m_; ++i) {
    e.c[i] = static_cast<std::uint16_t>(index % p_);
    index /= p_;
  }
  if (index != 0) throw InputError("field element index out of range");
  return e;
}

std::uint64_t GaloisField::to_index(const GfElement& a) const {
  std::uint64_t idx = 0;
  for (std::uint32_t i = m_; i-- > 0;) idx = idx * p_ + a.c[i];
  return idx;
}

GfElement GaloisField::generator() const {
  if (m_ == 1) {
    // Smallest primitive root mod p.
    for (std::uint32_t g = 1; g < p_; ++g) {
      bool primitive = true;
      for (const auto q : prime_divisors(p_ - 1)) {
        if (pow(from_int(g), (p_ - 1) / q) == one()) {
          primitive = false;
          break;
        }
      }
      if (primitive) return from_int(g);
    }
    return one();
  }
  GfElement e;
  e.c[1] = 1;
  return e;
}

GfElement GaloisField::add(const GfElement& a, const GfElement& b) const {
  GfElement r;
  if (p_ == 2) {
    for (std::uint32_t i = 0; i < m_; ++i) r.c[i] = a.c[i] ^ b.c[i];
    return r;
  }
  for (std::uint32_t i = 0; i < m_; ++i) {
    std::uint32_t s = std::uint32_t{a.c[i]} + b.c[i];
    if (s >= p_) s -= p_;
    r.c[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

GfElement GaloisField::sub(const GfElement& a, const GfElement& b) const {
  if (p_ == 2) return add(a, b);
  GfElement r;
  for (std::uint32_t i = 0; i < m_; ++i) {
    std::uint32_t s = std::uint32_t{a.c[i]} + p_ - b.c[i];
    if (s >= p_) s -= p_;
    r.c[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

GfElement GaloisField::neg(const GfElement& a) const { return sub(GfElement{}, a); }

GfElement GaloisField::mul(const GfElement& a, const GfElement& b) const {
  if (m_ == 1) {
    GfElement r;
    r.c[0] = static_cast<std::uint16_t>(std::uint32_t{a.c[0]} * b.c[0] % p_);
    return r;
  }
  return p_ == 2 ? mul_char2(a, b) : mul_generic(a, b);
}

GfElement GaloisField::mul_char2(const GfElement& a, const GfElement& b) const {
  std::uint64_t x = 0, y = 0;
  for (std::uint32_t i = 0; i < m_; ++i) {
    x |= std::uint64_t{a.c[i]} << i;
    y |= std::uint64_t{b.c[i]} << i;
  }
  std::uint64_t r = 0;
  while (y) {
    const int bit = __builtin_ctzll(y);
    r ^= x << bit;
    y &= y - 1;
  }
  const std::uint64_t full = modulus_bits_ | (std::uint64_t{1} << m_);
  for (std::uint32_t k = 2 * m_ - 2; k >= m_; --k) {
    if ((r >> k) & 1U) r ^= full << (k - m_);
    if (k == m_) break;
  }
  GfElement out;
  for (std::uint32_t i = 0; i < m_; ++i) out.c[i] = static_cast<std::uint16_t>((r >> i) & 1U);
  return out;
}

GfElement GaloisField::mul_generic(const GfElement& a, const GfElement& b) const {
  std::array<std::uint64_t, 2 * kMaxExtensionDegree> t{};
  const std::uint64_t p = p_;
  for (std::uint32_t i = 0; i < m_; ++i) {
    if (a.c[i] == 0) continue;
    const std::uint64_t ai = a.c[i];
    for (std::uint32_t j = 0; j < m_; ++j) t[i + j] += ai * b.c[j];
  }
  const auto& mod = spec_->modulus;
  for (std::uint32_t k = 2 * m_ - 2; k >= m_; --k) {
    const std::uint64_t coef = t[k] % p;
    if (coef != 0) {
      const std::uint32_t shift = k - m_;
      for (std::uint32_t i = 0; i < m_; ++i) {
        if (mod[i] != 0) t[shift + i] += coef * (p - mod[i]);
      }
    }
    if (k == m_) break;
  }
  GfElement out;
  for (std::uint32_t i = 0; i < m_; ++i) out.c[i] = static_cast<std::uint16_t>(t[i] % p);
  return out;
}

GfElement GaloisField::inv(const GfElement& a) const {
  if (is_zero(a)) throw InputError("inverse of zero in " + tag());
  if (m_ == 1) {
    GfElement r;
    r.c[0] = static_cast<std::uint16_t>(inv_mod(a.c[0], p_));
    return r;
  }
  // Extended Euclid on (a, modulus) over F_p.
  UPoly r0(spec_->modulus.begin(), spec_->modulus.end());
  UPoly r1(a.c.begin(), a.c.begin() + m_);
  trim(r1);
  UPoly s0{}, s1{1};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1, p_);
    UPoly s = poly_sub(s0, poly_mul(q, s1, p_), p_);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant.
  const std::uint32_t scale = inv_mod(r0[0], p_);
  GfElement out;
  for (std::size_t i = 0; i < s0.size(); ++i) out.c[i] = static_cast<std::uint16_t>(mulmod(s0[i], scale, p_));
  return out;
}

std::optional<GfElement> GaloisField::divide_exact(const GfElement& a, const GfElement& b) const {
  if (is_zero(b)) {
    if (is_zero(a)) return zero();
    return std::nullopt;
  }
  return div(a, b);
}

GfElement GaloisField::pow(const GfElement& a, std::uint64_t e) const {
  GfElement result = one();
  GfElement base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

GfElement GaloisField::frobenius(const GfElement& a) const { return pow(a, p_); }

GfElement GaloisField::frobenius(const GfElement& a, std::uint32_t k) const {
  GfElement r = a;
  for (std::uint32_t i = 0; i < k; ++i) r = frobenius(r);
  return r;
}

GfElement GaloisField::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint32_t> dist(0, p_ - 1);
  GfElement e;
  for (std::uint32_t i = 0; i < m_; ++i) e.c[i] = static_cast<std::uint16_t>(dist(rng));
  return e;
}

GfElement GaloisField::random_nonzero(std::mt19937_64& rng) const {
  while (true) {
    const GfElement e = random(rng);
    if (!is_zero(e)) return e;
  }
}

std::string GaloisField::to_string(const GfElement& a) const {
  if (m_ == 1) return std::to_string(a.c[0]);
  std::ostringstream out;
  bool first = true;
  for (std::uint32_t i = m_; i-- > 0;) {
    if (a.c[i] == 0) continue;
    if (!first) out << '+';
    first = false;
    if (i == 0 || a.c[i] != 1) out << a.c[i];
    if (i > 0) {
      if (a.c[i] != 1) out << '*';
      out << 'x';
      if (i > 1) out << '^' << i;
    }
  }
  if (first) out << '0';
  return out.str();
}

GfElement sqrt_char2(const GaloisField& field, const GfElement& x) {
  if (field.characteristic() != 2) throw UnsupportedError("sqrt_char2 requires characteristic 2");
  return field.frobenius(x, field.degree() - 1);
}

}  // namespace cubic
