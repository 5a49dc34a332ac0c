#include "cubic/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace cubic {

LatticeSpec LatticeSpec::cube(std::size_t d, std::size_t l, std::vector<std::size_t> thin_dims) {
  if (thin_dims.empty()) thin_dims.assign(d, 1);
  LatticeSpec s{std::vector<std::size_t>(d, l), std::move(thin_dims)};
  s.validate();
  return s;
}

std::size_t LatticeSpec::vertex_count() const {
  std::size_t n = 1;
  for (const auto e : edges) n *= e;
  return n;
}

std::size_t LatticeSpec::line_count(std::size_t axis) const {
  std::size_t n = 1;
  for (std::size_t j = 0; j < edges.size(); ++j) {
    if (j != axis) n *= edges[j];
  }
  return n;
}

void LatticeSpec::validate() const {
  if (edges.empty()) throw InputError("lattice dimension must be at least 1");
  if (thin_dims.size() != edges.size()) throw InputError("need one thin dimension per axis");
  for (const auto e : edges) {
    if (e == 0) throw InputError("edge lengths must be at least 1");
  }
  for (const auto t : thin_dims) {
    if (t == 0) throw InputError("thin dimensions must be at least 1");
  }
}

std::string OrderingSpec::name() const {
  switch (kind) {
    case LineOrdering::Lex:
      return "lex";
    case LineOrdering::Colex:
      return "colex";
    case LineOrdering::Explicit:
      return "explicit";
  }
  return "unknown";
}

ThickProfile::ThickProfile(LatticeSpec spec, OrderingSpec ordering)
    : spec_(std::move(spec)), ordering_(std::move(ordering)) {
  spec_.validate();
  const std::size_t d = spec_.dim();
  if (ordering_.kind == LineOrdering::Explicit && ordering_.perms.size() != d) {
    throw InputError("explicit line ordering needs one permutation per axis");
  }
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t lines = spec_.line_count(i);
    std::vector<std::size_t> slot_of_rank(lines);
    switch (ordering_.kind) {
      case LineOrdering::Lex:
        std::iota(slot_of_rank.begin(), slot_of_rank.end(), std::size_t{0});
        break;
      case LineOrdering::Colex: {
        // Lex rank digits (most significant first) are the transverse axes in
        // increasing order; colex reads the same digits least significant first.
        std::vector<std::size_t> radices;
        for (std::size_t j = 0; j < d; ++j) {
          if (j != i) radices.push_back(spec_.edges[j]);
        }
        for (std::size_t r = 0; r < lines; ++r) {
          std::vector<std::size_t> digits(radices.size());
          std::size_t rest = r;
          for (std::size_t k = radices.size(); k-- > 0;) {
            digits[k] = rest % radices[k];
            rest /= radices[k];
          }
          std::size_t slot = 0;
          for (std::size_t k = radices.size(); k-- > 0;) slot = slot * radices[k] + digits[k];
          slot_of_rank[r] = slot;
        }
        break;
      }
      case LineOrdering::Explicit: {
        const auto& perm = ordering_.perms[i];
        if (perm.size() != lines) throw InputError("explicit line permutation has the wrong length");
        std::vector<bool> seen(lines, false);
        for (const auto s : perm) {
          if (s >= lines || seen[s]) throw InputError("explicit line ordering is not a permutation");
          seen[s] = true;
        }
        slot_of_rank = perm;
        break;
      }
    }
    std::vector<std::size_t> rank_of_slot(lines);
    for (std::size_t r = 0; r < lines; ++r) rank_of_slot[slot_of_rank[r]] = r;
    offsets_.push_back(total_);
    thick_dims_.push_back(lines * spec_.thin_dims[i]);
    total_ += thick_dims_.back();
    slot_of_rank_.push_back(std::move(slot_of_rank));
    rank_of_slot_.push_back(std::move(rank_of_slot));
  }
}

std::size_t ThickProfile::line_rank(std::size_t axis, const Vertex& v) const {
  std::size_t r = 0;
  for (std::size_t j = 0; j < spec_.dim(); ++j) {
    if (j != axis) r = r * spec_.edges[j] + v[j];
  }
  return r;
}

std::size_t ThickProfile::axis_of(std::size_t global) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (global < offsets_[i] + thick_dims_[i]) return i;
  }
  throw InputError("coordinate outside the thick space");
}

ThickProfile enumerate_lines(const LatticeSpec& spec, const OrderingSpec& ordering) {
  return ThickProfile(spec, ordering);
}

std::vector<Vertex> all_vertices(const LatticeSpec& spec) {
  spec.validate();
  std::vector<Vertex> out;
  out.reserve(spec.vertex_count());
  Vertex v(spec.dim(), 0);
  for (std::size_t n = 0; n < spec.vertex_count(); ++n) {
    out.push_back(v);
    for (std::size_t k = spec.dim(); k-- > 0;) {
      if (++v[k] < spec.edges[k]) break;
      v[k] = 0;
    }
  }
  return out;
}

std::vector<Vertex> default_vertex_order(const LatticeSpec& spec) {
  auto vs = all_vertices(spec);
  std::stable_sort(vs.begin(), vs.end(), [](const Vertex& a, const Vertex& b) {
    return std::accumulate(a.begin(), a.end(), std::size_t{0}) < std::accumulate(b.begin(), b.end(), std::size_t{0});
  });
  return vs;
}

namespace {

std::size_t vertex_id(const LatticeSpec& spec, const Vertex& v) {
  std::size_t id = 0;
  for (std::size_t k = 0; k < spec.dim(); ++k) id = id * spec.edges[k] + v[k];
  return id;
}

}  // namespace

bool is_linear_extension(const LatticeSpec& spec, std::span<const Vertex> order) {
  if (order.size() != spec.vertex_count()) return false;
  std::vector<bool> placed(spec.vertex_count(), false);
  for (const auto& v : order) {
    if (v.size() != spec.dim()) return false;
    for (std::size_t k = 0; k < spec.dim(); ++k) {
      if (v[k] >= spec.edges[k]) return false;
    }
    const auto id = vertex_id(spec, v);
    if (placed[id]) return false;
    for (std::size_t k = 0; k < spec.dim(); ++k) {
      if (v[k] == 0) continue;
      Vertex u = v;
      --u[k];
      if (!placed[vertex_id(spec, u)]) return false;
    }
    placed[id] = true;
  }
  return true;
}

std::vector<Vertex> random_linear_extension(const LatticeSpec& spec, std::mt19937_64& rng) {
  const auto vs = all_vertices(spec);
  std::vector<std::size_t> missing(vs.size(), 0);  // predecessors not yet placed
  for (std::size_t id = 0; id < vs.size(); ++id) {
    for (const auto c : vs[id]) missing[id] += c > 0 ? 1 : 0;
  }
  std::vector<std::size_t> ready;
  for (std::size_t id = 0; id < vs.size(); ++id) {
    if (missing[id] == 0) ready.push_back(id);
  }
  std::vector<Vertex> out;
  while (!ready.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
    const std::size_t at = pick(rng);
    const std::size_t id = ready[at];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(at));
    out.push_back(vs[id]);
    for (std::size_t k = 0; k < spec.dim(); ++k) {
      if (vs[id][k] + 1 >= spec.edges[k]) continue;
      Vertex w = vs[id];
      ++w[k];
      const auto wid = vertex_id(spec, w);
      if (--missing[wid] == 0) ready.push_back(wid);
    }
  }
  return out;
}

namespace detail {

void check_vertex(const LatticeSpec& spec, const Vertex& v) {
  if (v.size() != spec.dim()) throw InputError("vertex has the wrong number of coordinates");
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] >= spec.edges[k]) throw InputError("vertex lies outside the lattice");
  }
}

std::vector<std::size_t> brick_indices(const ThickProfile& profile, const Vertex& v) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < profile.dim(); ++i) {
    for (std::size_t k = 0; k < profile.spec().thin_dims[i]; ++k) idx.push_back(profile.index(i, v, k));
  }
  return idx;
}

}  // namespace detail

}  // namespace cubic
