#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cubic/boundary.hpp"
#include "cubic/census.hpp"
#include "cubic/galois_field.hpp"
#include "cubic/identity_check.hpp"
#include "cubic/lattice.hpp"

namespace cubic {

inline constexpr std::uint64_t kPointMapGuard = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kCensusGuard = std::uint64_t{1} << 22;

// The set map x -> x A on F^n, the data behind a permutation-type operator.
// Point index = little-endian base-q digits, digit k = field index of x_k.
struct PointMap {
  std::uint64_t q = 2;
  std::size_t n = 0;
  std::vector<std::uint32_t> image;

  std::uint64_t domain_size() const { return image.size(); }
  bool is_bijective() const;
  std::size_t image_size() const;
};

std::uint64_t point_count(std::uint64_t q, std::size_t n, std::uint64_t guard);
std::uint64_t point_index(const GaloisField& field, std::span<const GfElement> x);
std::vector<GfElement> point_at(const GaloisField& field, std::size_t n, std::uint64_t index);

PointMap materialize_map(const Matrix<GaloisField>& a, std::uint64_t guard = kPointMapGuard);

// Checks that identity maps to the identity table, that the table of A_k A_{k+1}
// is the composition of the tables, and that the table of A_k (+) A_{k+1} is the
// product map on pairs of points.
Verdict check_operator_laws(std::span<const Matrix<GaloisField>> as, std::uint64_t guard = kPointMapGuard);
// Same laws, with maps[k] standing in for the table of as[k].
Verdict check_operator_laws(std::span<const Matrix<GaloisField>> as, std::span<const PointMap> maps,
                            std::uint64_t guard = kPointMapGuard);

// Enumerates every input row x and counts those meeting the boundary
// conditions. The count must be a power of q; anything else is a bug.
ConfigCount brute_force_census(const Matrix<GaloisField>& r, const ThickProfile& profile,
                               const BoundaryConditions& bcs, std::uint64_t guard = kCensusGuard);

// Spins on every edge, obtained by pushing the input row through the bricks one
// vertex at a time. inputs[v] / outputs[v] are brick-ordered for order[v].
struct EdgeConfiguration {
  std::vector<Vertex> order;
  std::vector<std::vector<GfElement>> inputs;
  std::vector<std::vector<GfElement>> outputs;
  std::vector<GfElement> final_state;
};

EdgeConfiguration reconstruct_configuration(const BrickSpec<GaloisField>& brick, const ThickProfile& profile,
                                            std::span<const GfElement> x, std::span<const Vertex> order);

// Every vertex maps its inputs to its outputs through the brick, each inner edge
// carries one value (the output of one vertex is the input of the next along
// the line), the first inputs are x and the last outputs are x R.
bool configuration_consistent(const BrickSpec<GaloisField>& brick, const ThickProfile& profile,
                              const EdgeConfiguration& config, std::span<const GfElement> x,
                              const Matrix<GaloisField>& r);

}  // namespace cubic
