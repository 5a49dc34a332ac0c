#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cubic/boundary.hpp"
#include "cubic/galois_field.hpp"
#include "cubic/lattice.hpp"
#include "cubic/linalg.hpp"

namespace cubic {

// Number of permitted configurations, kept as q^exponent.
struct ConfigCount {
  std::uint32_t p = 2;
  std::uint64_t q = 2;
  std::size_t exponent = 0;

  // q^exponent when it fits below 2^63.
  std::optional<std::uint64_t> expanded() const;
  friend bool operator==(const ConfigCount&, const ConfigCount&) = default;
};

std::string to_string(const ConfigCount& c);

namespace detail {
void check_census_inputs(std::size_t rows, std::size_t cols, const ThickProfile& profile,
                         const BoundaryConditions& bcs);
}

// Columns are the linear functionals of the input row x that must vanish:
// (x r - x) restricted to a periodic axis, x restricted to a zero-input axis.
template <Field F>
Matrix<F> build_constraint_system(const Matrix<F>& r, const ThickProfile& profile, const BoundaryConditions& bcs) {
  detail::check_census_inputs(r.rows(), r.cols(), profile, bcs);
  const F& field = r.ring();
  // Column order follows the axis order, matching the inputs.
  std::vector<std::pair<std::size_t, bool>> cols;
  for (std::size_t g = 0; g < profile.total(); ++g) {
    const auto i = profile.axis_of(g);
    if (bcs[i] == Boundary::Periodic) cols.emplace_back(g, true);
    if (bcs[i] == Boundary::ZeroInput) cols.emplace_back(g, false);
  }
  Matrix<F> c(field, r.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto [g, periodic] = cols[j];
    for (std::size_t row = 0; row < r.rows(); ++row) {
      if (periodic) {
        c(row, j) = row == g ? field.sub(r(row, g), field.one()) : r(row, g);
      } else {
        c(row, j) = row == g ? field.one() : field.zero();
      }
    }
  }
  return c;
}

// Exponent = dimension of {x : x C = 0}.
template <Field F>
std::size_t count_configs_exponent(const Matrix<F>& r, const ThickProfile& profile, const BoundaryConditions& bcs) {
  const auto c = build_constraint_system(r, profile, bcs);
  return c.rows() - rank(c);
}

// Uses bit-packed elimination over F_2.
ConfigCount count_configs(const Matrix<GaloisField>& r, const ThickProfile& profile, const BoundaryConditions& bcs);

}  // namespace cubic
