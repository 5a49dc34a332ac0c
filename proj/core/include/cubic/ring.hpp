#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

namespace cubic {

// A ring descriptor is a small value type carrying whatever runtime parameters
// the ring needs (characteristic, modulus, variable names). Elements are plain
// values and every operation goes through the descriptor, so a Matrix<R> can be
// built over fields, polynomial rings and matrix algebras alike.
template <class R>
concept Ring = std::copy_constructible<R> && requires(const R& r, const typename R::Element& a,
                                                      const typename R::Element& b, std::int64_t n) {
  typename R::Element;
  { r.zero() } -> std::convertible_to<typename R::Element>;
  { r.one() } -> std::convertible_to<typename R::Element>;
  { r.from_int(n) } -> std::convertible_to<typename R::Element>;
  { r.add(a, b) } -> std::convertible_to<typename R::Element>;
  { r.sub(a, b) } -> std::convertible_to<typename R::Element>;
  { r.mul(a, b) } -> std::convertible_to<typename R::Element>;
  { r.neg(a) } -> std::convertible_to<typename R::Element>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
  { r.equal(a, b) } -> std::convertible_to<bool>;
  { r.tag() } -> std::convertible_to<std::string>;
};

// Rings without zero divisors that can test and perform exact division.
// Fraction-free elimination (Bareiss) relies on this.
template <class R>
concept IntegralDomain = Ring<R> && requires(const R& r, const typename R::Element& a,
                                             const typename R::Element& b) {
  { r.divide_exact(a, b) } -> std::same_as<std::optional<typename R::Element>>;
};

template <class R>
concept Field = IntegralDomain<R> && requires(const R& r, const typename R::Element& a) {
  { r.inv(a) } -> std::convertible_to<typename R::Element>;
  { r.is_field() } -> std::convertible_to<bool>;
};

// Rings where some elements are units and the inverse can be attempted
// (matrix algebras over a field).
template <class R>
concept UnitInvertible = Ring<R> && requires(const R& r, const typename R::Element& a) {
  { r.try_inverse(a) } -> std::same_as<std::optional<typename R::Element>>;
};

template <Ring R>
typename R::Element ring_pow(const R& ring, typename R::Element base, std::uint64_t exponent) {
  auto result = ring.one();
  while (exponent > 0) {
    if (exponent & 1U) result = ring.mul(result, base);
    exponent >>= 1U;
    if (exponent > 0) base = ring.mul(base, base);
  }
  return result;
}

}  // namespace cubic
