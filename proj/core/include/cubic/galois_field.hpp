#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace cubic {

// Upper bound on the extension degree m of GF(p^m). The acceptance runs use m = 16.
inline constexpr std::size_t kMaxExtensionDegree = 32;
// Characteristic bound: residues are stored as 16-bit values.
inline constexpr std::uint32_t kMaxCharacteristic = 65521;

struct PrimeFieldSpec {
  std::uint32_t p = 2;
};

// GF(p^m) = F_p[x] / (modulus). `modulus` holds m + 1 coefficients from the
// constant term upward and is monic.
struct ExtFieldSpec {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  std::vector<std::uint32_t> modulus{0, 1};

  friend bool operator==(const ExtFieldSpec&, const ExtFieldSpec&) = default;
};

bool is_prime(std::uint64_t n);

// Rabin's irreducibility test for a monic polynomial over F_p (coefficients
// constant term first).
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic);

// Lowest monic irreducible of degree m, ordered by the base-p integer
// c_0 + c_1 p + ... + c_{m-1} p^{m-1} of its non-leading coefficients.
// Deterministic: the same (p, m) always yields the same modulus.
ExtFieldSpec build_extension_field(std::uint32_t p, std::uint32_t m);

// Polynomial-basis coordinates; unused slots are zero.
struct GfElement {
  std::array<std::uint16_t, kMaxExtensionDegree> c{};

  friend bool operator==(const GfElement&, const GfElement&) = default;
};

class GaloisField {
 public:
  using Element = GfElement;

  GaloisField();  // F_2
  explicit GaloisField(ExtFieldSpec spec);
  static GaloisField prime(std::uint32_t p);
  static GaloisField extension(std::uint32_t p, std::uint32_t m);

  const ExtFieldSpec& spec() const { return *spec_; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return m_; }
  // Number of elements, when it fits in 64 bits.
  std::optional<std::uint64_t> order() const;
  double log2_order() const;
  std::string tag() const;
  bool is_field() const { return true; }

  Element zero() const { return {}; }
  Element one() const;
  Element from_int(std::int64_t n) const;
  Element from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(const Element& a) const;
  // Base-p packing c_0 + c_1 p + ...; a bijection onto [0, q).
  Element from_index(std::uint64_t index) const;
  std::uint64_t to_index(const Element& a) const;
  // The class of x in F_p[x]/(modulus); a field generator only when the modulus is primitive.
  Element generator() const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;  // throws InputError on zero
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
  std::optional<Element> divide_exact(const Element& a, const Element& b) const;
  Element pow(const Element& a, std::uint64_t e) const;
  // x -> x^p.
  Element frobenius(const Element& a) const;
  // x -> x^(p^k).
  Element frobenius(const Element& a, std::uint32_t k) const;

  bool is_zero(const Element& a) const { return a == Element{}; }
  bool is_one(const Element& a) const { return a == one(); }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  Element random(std::mt19937_64& rng) const;
  Element random_nonzero(std::mt19937_64& rng) const;

  std::string to_string(const Element& a) const;

  friend bool operator==(const GaloisField& a, const GaloisField& b) {
    return a.spec_ == b.spec_ || *a.spec_ == *b.spec_;
  }

 private:
  Element mul_char2(const Element& a, const Element& b) const;
  Element mul_generic(const Element& a, const Element& b) const;

  std::shared_ptr<const ExtFieldSpec> spec_;
  std::uint32_t p_ = 2;
  std::uint32_t m_ = 1;
  std::uint64_t modulus_bits_ = 0;  // char-2 modulus as a bit mask (without the leading bit)
};

// Square root in characteristic 2: y = x^(2^(m-1)), the unique y with y^2 = x.
GfElement sqrt_char2(const GaloisField& field, const GfElement& x);

}  // namespace cubic
