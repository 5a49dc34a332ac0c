#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cubic/errors.hpp"
#include "cubic/linalg.hpp"
#include "cubic/matrix.hpp"

namespace cubic {

using Vertex = std::vector<std::size_t>;

// A box of vertices 0 <= x_i < edges[i]. Cubes have all edges equal.
struct LatticeSpec {
  std::vector<std::size_t> edges;
  std::vector<std::size_t> thin_dims;  // dimension of the per-line space of each axis

  static LatticeSpec cube(std::size_t d, std::size_t l, std::vector<std::size_t> thin_dims = {});

  std::size_t dim() const { return edges.size(); }
  std::size_t vertex_count() const;
  // Number of lines parallel to `axis`: product of the other edges.
  std::size_t line_count(std::size_t axis) const;
  void validate() const;

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

enum class LineOrdering { Lex, Colex, Explicit };

// How the lines parallel to one axis are numbered inside its thick space.
// Lex ranks the transverse coordinates with the lowest-numbered axis most
// significant; Colex reverses the significance; Explicit maps each lex rank to
// a slot through a per-axis permutation.
struct OrderingSpec {
  LineOrdering kind = LineOrdering::Lex;
  std::vector<std::vector<std::size_t>> perms;

  static OrderingSpec lex() { return {}; }
  static OrderingSpec colex() { return {LineOrdering::Colex, {}}; }
  static OrderingSpec explicit_perms(std::vector<std::vector<std::size_t>> perms) {
    return {LineOrdering::Explicit, std::move(perms)};
  }
  std::string name() const;

  friend bool operator==(const OrderingSpec&, const OrderingSpec&) = default;
};

// Thick-space bookkeeping: axis i occupies line_count(i) * thin_dims[i]
// consecutive coordinates, axes in increasing order, and inside an axis the
// coordinate of (slot, k) is slot * thin_dims[i] + k.
class ThickProfile {
 public:
  ThickProfile() = default;
  explicit ThickProfile(LatticeSpec spec, OrderingSpec ordering = {});

  const LatticeSpec& spec() const { return spec_; }
  const OrderingSpec& ordering() const { return ordering_; }
  std::size_t dim() const { return spec_.dim(); }
  std::size_t thick_dim(std::size_t axis) const { return thick_dims_.at(axis); }
  std::size_t offset(std::size_t axis) const { return offsets_.at(axis); }
  std::size_t total() const { return total_; }
  std::size_t line_count(std::size_t axis) const { return spec_.line_count(axis); }
  BlockProfile block_profile() const { return {thick_dims_}; }

  // Lex rank of the transverse coordinates of `v` with respect to `axis`.
  std::size_t line_rank(std::size_t axis, const Vertex& v) const;
  std::size_t slot(std::size_t axis, const Vertex& v) const { return slot_of_rank_[axis][line_rank(axis, v)]; }
  std::size_t slot_of_rank(std::size_t axis, std::size_t rank) const { return slot_of_rank_.at(axis).at(rank); }
  std::size_t rank_of_slot(std::size_t axis, std::size_t slot) const { return rank_of_slot_.at(axis).at(slot); }
  // Global coordinate of thin component k on the axis line through v.
  std::size_t index(std::size_t axis, const Vertex& v, std::size_t k) const {
    return offsets_[axis] + slot(axis, v) * spec_.thin_dims[axis] + k;
  }
  // Axis owning a global coordinate.
  std::size_t axis_of(std::size_t global) const;

 private:
  LatticeSpec spec_;
  OrderingSpec ordering_;
  std::vector<std::size_t> thick_dims_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
  std::vector<std::vector<std::size_t>> slot_of_rank_;
  std::vector<std::vector<std::size_t>> rank_of_slot_;
};

ThickProfile enumerate_lines(const LatticeSpec& spec, const OrderingSpec& ordering = {});

// All vertices, lexicographic with coordinate 0 most significant.
std::vector<Vertex> all_vertices(const LatticeSpec& spec);
// Layered order: by coordinate sum, lexicographic inside a layer.
std::vector<Vertex> default_vertex_order(const LatticeSpec& spec);
// Every vertex exactly once, each after all its immediate predecessors x - e_i.
bool is_linear_extension(const LatticeSpec& spec, std::span<const Vertex> order);
std::vector<Vertex> random_linear_extension(const LatticeSpec& spec, std::mt19937_64& rng);

template <Ring R>
struct BrickSpec {
  std::vector<std::size_t> thin_dims;
  Matrix<R> entries;

  std::size_t dim() const { return thin_dims.size(); }
  BlockProfile profile() const { return {thin_dims}; }
  void validate() const {
    std::size_t n = 0;
    for (const auto t : thin_dims) {
      if (t == 0) throw InputError("thin dimensions must be positive");
      n += t;
    }
    if (!entries.is_square() || entries.rows() != n) {
      throw InputError("brick matrix is " + std::to_string(entries.rows()) + "x" + std::to_string(entries.cols()) +
                       " but thin dimensions sum to " + std::to_string(n));
    }
  }
};

template <Ring R>
BrickSpec<R> make_brick(Matrix<R> entries) {
  BrickSpec<R> b{std::vector<std::size_t>(entries.rows(), 1), std::move(entries)};
  b.validate();
  return b;
}

namespace detail {

void check_vertex(const LatticeSpec& spec, const Vertex& v);

// Global coordinates touched by a brick at v, in brick row order.
std::vector<std::size_t> brick_indices(const ThickProfile& profile, const Vertex& v);

}  // namespace detail

// acc <- acc * E_v, where E_v is the brick acting on the lines through v.
template <Ring R>
void apply_brick_at(Matrix<R>& acc, const BrickSpec<R>& brick, const Vertex& v, const ThickProfile& profile) {
  detail::check_vertex(profile.spec(), v);
  if (brick.thin_dims != profile.spec().thin_dims) throw InputError("brick thin dimensions do not match the lattice");
  if (acc.cols() != profile.total()) throw InputError("accumulator does not match the thick dimension");
  const auto idx = detail::brick_indices(profile, v);
  const R& ring = acc.ring();
  const std::size_t n = idx.size();
  std::vector<typename R::Element> in(n, ring.zero());
  for (std::size_t r = 0; r < acc.rows(); ++r) {
    bool any = false;
    for (std::size_t a = 0; a < n; ++a) {
      in[a] = acc(r, idx[a]);
      any = any || !ring.is_zero(in[a]);
    }
    if (!any) continue;
    for (std::size_t b = 0; b < n; ++b) {
      auto s = ring.zero();
      for (std::size_t a = 0; a < n; ++a) {
        if (ring.is_zero(in[a]) || ring.is_zero(brick.entries(a, b))) continue;
        s = ring.add(s, ring.mul(in[a], brick.entries(a, b)));
      }
      acc(r, idx[b]) = std::move(s);
    }
  }
}

// x <- x * E_v for a single row vector.
template <Ring R>
void apply_brick_to_row(std::vector<typename R::Element>& x, const BrickSpec<R>& brick, const Vertex& v,
                        const ThickProfile& profile) {
  Matrix<R> row(brick.entries.ring(), 1, x.size(), x);
  apply_brick_at(row, brick, v, profile);
  x = row.row(0);
}

template <Ring R>
Matrix<R> embed_brick_at(const BrickSpec<R>& brick, const Vertex& v, const ThickProfile& profile) {
  auto m = Matrix<R>::identity(brick.entries.ring(), profile.total());
  apply_brick_at(m, brick, v, profile);
  return m;
}

template <Ring R>
struct AssembledBlock {
  Matrix<R> matrix;
  ThickProfile profile;
  std::vector<Vertex> order;

  BrickSpec<R> as_brick() const {
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < profile.dim(); ++i) dims.push_back(profile.thick_dim(i));
    return {std::move(dims), matrix};
  }
};

// Product of all embedded bricks, earlier vertices leftmost. `order` must be a
// linear extension of the coordinatewise partial order; the layered order is
// used when none is given.
template <Ring R>
AssembledBlock<R> assemble_block(const BrickSpec<R>& brick, const LatticeSpec& spec,
                                 std::optional<std::vector<Vertex>> order = std::nullopt,
                                 const OrderingSpec& ordering = {}) {
  brick.validate();
  spec.validate();
  if (brick.thin_dims != spec.thin_dims) throw InputError("brick thin dimensions do not match the lattice");
  std::vector<Vertex> seq = order ? std::move(*order) : default_vertex_order(spec);
  if (order && !is_linear_extension(spec, seq)) throw InputError("vertex order is not a linear extension");
  ThickProfile profile(spec, ordering);
  auto m = Matrix<R>::identity(brick.entries.ring(), profile.total());
  for (const auto& v : seq) apply_brick_at(m, brick, v, profile);
  return {std::move(m), std::move(profile), std::move(seq)};
}

template <Ring R>
AssembledBlock<R> assemble_block(const BrickSpec<R>& brick, std::size_t l,
                                 std::optional<std::vector<Vertex>> order = std::nullopt,
                                 const OrderingSpec& ordering = {}) {
  LatticeSpec spec{std::vector<std::size_t>(brick.dim(), l), brick.thin_dims};
  return assemble_block(brick, spec, std::move(order), ordering);
}

inline constexpr std::size_t kDefaultDimensionCap = 4096;

// Iterated block making: step k + 1 uses the block of step k as its brick.
template <Ring R>
std::vector<AssembledBlock<R>> evolve(const BrickSpec<R>& brick, std::size_t steps, std::size_t l,
                                      std::size_t cap = kDefaultDimensionCap, const OrderingSpec& ordering = {}) {
  if (steps == 0) throw InputError("evolution needs at least one step");
  if (l == 0) throw InputError("edge length must be positive");
  std::vector<AssembledBlock<R>> out;
  BrickSpec<R> current = brick;
  std::size_t lines = 1;
  for (std::size_t i = 1; i < brick.dim(); ++i) lines *= l;
  for (std::size_t s = 0; s < steps; ++s) {
    std::size_t next_dim = 0;
    for (const auto t : current.thin_dims) next_dim += t * lines;
    if (next_dim > cap) {
      throw ResourceError("evolution step " + std::to_string(s + 1) + " would reach dimension " +
                          std::to_string(next_dim) + ", above the cap of " + std::to_string(cap));
    }
    out.push_back(assemble_block(current, l, std::nullopt, ordering));
    current = out.back().as_brick();
  }
  return out;
}

}  // namespace cubic
