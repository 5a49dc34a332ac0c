#include "cubic/census.hpp"

#include <algorithm>
#include <cctype>

#include "cubic/gf2_matrix.hpp"

namespace cubic {

std::string to_string(Boundary b) {
  switch (b) {
    case Boundary::Periodic:
      return "periodic";
    case Boundary::ZeroInput:
      return "zero";
    case Boundary::Free:
      return "free";
  }
  return "unknown";
}

std::string to_string(const BoundaryConditions& bcs) {
  std::string out;
  for (const auto b : bcs) {
    if (!out.empty()) out += ",";
    out += to_string(b);
  }
  return out;
}

Boundary parse_boundary(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "p" || t == "periodic" || t == "toric") return Boundary::Periodic;
  if (t == "z" || t == "zero" || t == "zero-input" || t == "zeroinput") return Boundary::ZeroInput;
  if (t == "f" || t == "free") return Boundary::Free;
  throw InputError("unknown boundary condition '" + std::string(text) + "'");
}

BoundaryConditions parse_boundaries(std::string_view text) {
  BoundaryConditions out;
  if (text.find(',') == std::string_view::npos && text.size() > 1 &&
      std::all_of(text.begin(), text.end(), [](char c) { return std::string_view("PZFpzf").find(c) != std::string_view::npos; })) {
    for (const char c : text) out.push_back(parse_boundary(std::string_view(&c, 1)));
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_boundary(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<BoundaryConditions> all_boundary_mixes(std::size_t d) {
  std::vector<BoundaryConditions> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= 3;
  for (std::size_t n = 0; n < total; ++n) {
    BoundaryConditions bcs(d);
    std::size_t rest = n;
    for (std::size_t i = d; i-- > 0;) {
      bcs[i] = static_cast<Boundary>(rest % 3);
      rest /= 3;
    }
    out.push_back(std::move(bcs));
  }
  return out;
}

std::optional<std::uint64_t> ConfigCount::expanded() const {
  std::uint64_t v = 1;
  for (std::size_t k = 0; k < exponent; ++k) {
    if (q != 0 && v > (std::uint64_t{1} << 63) / q) return std::nullopt;
    v *= q;
  }
  if (v >= (std::uint64_t{1} << 63)) return std::nullopt;
  return v;
}

std::string to_string(const ConfigCount& c) {
  return std::to_string(c.q) + "^" + std::to_string(c.exponent);
}

namespace detail {

void check_census_inputs(std::size_t rows, std::size_t cols, const ThickProfile& profile,
                         const BoundaryConditions& bcs) {
  if (rows != cols || rows != profile.total()) {
    throw InputError("block of size " + std::to_string(rows) + "x" + std::to_string(cols) +
                     " does not match thick dimension " + std::to_string(profile.total()));
  }
  if (bcs.size() != profile.dim()) {
    throw InputError("need " + std::to_string(profile.dim()) + " boundary conditions, got " +
                     std::to_string(bcs.size()));
  }
}

}  // namespace detail

ConfigCount count_configs(const Matrix<GaloisField>& r, const ThickProfile& profile, const BoundaryConditions& bcs) {
  const auto& field = r.ring();
  ConfigCount out;
  out.p = field.characteristic();
  out.q = field.order().value_or(0);
  const auto c = build_constraint_system(r, profile, bcs);
  if (field.characteristic() == 2 && field.degree() == 1) {
    out.exponent = c.rows() - gf2_rank(Gf2Matrix::from_matrix(c));
  } else {
    out.exponent = c.rows() - rank(c);
  }
  return out;
}

}  // namespace cubic
