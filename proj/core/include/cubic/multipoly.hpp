#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubic/galois_field.hpp"

namespace cubic {

inline constexpr std::size_t kMaxVariables = 16;

struct Monomial {
  std::array<std::uint8_t, kMaxVariables> e{};

  std::uint32_t degree() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic order: larger total degree first, ties broken
// lexicographically with variable 0 most significant.
bool grlex_greater(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  std::int64_t coeff = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

// Sparse multivariate polynomial. Terms are kept in grlex-descending order with
// no zero coefficients, so structural equality is polynomial equality.
class MultiPoly {
 public:
  MultiPoly() = default;

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::uint32_t total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  friend class PolyRing;
  std::vector<Term> terms_;
};

// Polynomial ring over F_p (coeff_modulus = p) or the integers (coeff_modulus = 0).
// Integer arithmetic uses int64 with overflow detection.
class PolyRing {
 public:
  using Element = MultiPoly;

  PolyRing();
  PolyRing(std::vector<std::string> variables, std::uint64_t coeff_modulus);
  static PolyRing integers(std::vector<std::string> variables) { return PolyRing(std::move(variables), 0); }
  static PolyRing modp(std::vector<std::string> variables, std::uint64_t p) {
    return PolyRing(std::move(variables), p);
  }

  std::size_t nvars() const { return vars_->size(); }
  const std::vector<std::string>& variables() const { return *vars_; }
  std::optional<std::size_t> variable_index(std::string_view name) const;
  std::uint64_t coeff_modulus() const { return modulus_; }
  bool is_integer() const { return modulus_ == 0; }
  std::string tag() const;

  // Per-element term budget; products or sums exceeding it throw ResourceError.
  void set_term_budget(std::size_t max_terms) { term_budget_ = max_terms; }
  std::size_t term_budget() const { return term_budget_; }

  MultiPoly zero() const { return {}; }
  MultiPoly one() const { return from_int(1); }
  MultiPoly from_int(std::int64_t n) const;
  MultiPoly variable(std::size_t index) const;
  MultiPoly variable(std::string_view name) const;
  MultiPoly monomial(const Monomial& mono, std::int64_t coeff) const;
  // Sorts and merges arbitrary terms into canonical form.
  MultiPoly from_terms(std::vector<Term> terms) const;

  MultiPoly add(const MultiPoly& a, const MultiPoly& b) const;
  MultiPoly sub(const MultiPoly& a, const MultiPoly& b) const;
  MultiPoly neg(const MultiPoly& a) const;
  MultiPoly mul(const MultiPoly& a, const MultiPoly& b) const;
  MultiPoly scale(const MultiPoly& a, std::int64_t c) const;
  MultiPoly pow(const MultiPoly& a, std::uint32_t e) const;
  std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) const;

  bool is_zero(const MultiPoly& a) const { return a.is_zero(); }
  bool equal(const MultiPoly& a, const MultiPoly& b) const { return a == b; }

  // Maps a polynomial from another ring with the same variables, reducing
  // integer coefficients mod p when this ring is F_p.
  MultiPoly convert(const PolyRing& source, const MultiPoly& f) const;

  std::string to_string(const MultiPoly& f) const;
  // Parses "+ - * ^ ( )" expressions over integers and this ring's variables.
  MultiPoly parse(std::string_view text) const;

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.modulus_ == b.modulus_ && (a.vars_ == b.vars_ || *a.vars_ == *b.vars_);
  }

 private:
  std::int64_t norm(std::int64_t c) const;
  std::int64_t cadd(std::int64_t a, std::int64_t b) const;
  std::int64_t cmul(std::int64_t a, std::int64_t b) const;
  void check_budget(std::size_t terms) const;

  std::shared_ptr<const std::vector<std::string>> vars_;
  std::uint64_t modulus_ = 0;
  std::size_t term_budget_ = 0;  // 0 = unlimited
};

// Evaluates f at values[i] for variable i. Integer coefficients are reduced mod
// p; F_p coefficients require p to equal the field characteristic.
GfElement poly_specialize(const PolyRing& ring, const MultiPoly& f, const GaloisField& field,
                          std::span<const GfElement> values);
GfElement poly_specialize(const PolyRing& ring, const MultiPoly& f, const GaloisField& field,
                          const std::map<std::string, GfElement>& assignment);

}  // namespace cubic
