#include "cubic/point_map.hpp"

#include <map>

#include "cubic/linalg.hpp"

namespace cubic {

bool PointMap::is_bijective() const { return image_size() == image.size(); }

std::size_t PointMap::image_size() const {
  std::vector<bool> hit(image.size(), false);
  std::size_t count = 0;
  for (const auto y : image) {
    if (!hit[y]) {
      hit[y] = true;
      ++count;
    }
  }
  return count;
}

std::uint64_t point_count(std::uint64_t q, std::size_t n, std::uint64_t guard) {
  if (q < 2) throw InputError("field size must be known and at least 2");
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (count > guard / q) {
      throw ResourceError(std::to_string(q) + "^" + std::to_string(n) + " points exceed the enumeration cap of " +
                          std::to_string(guard));
    }
    count *= q;
  }
  return count;
}

std::uint64_t point_index(const GaloisField& field, std::span<const GfElement> x) {
  const std::uint64_t q = *field.order();
  std::uint64_t idx = 0;
  for (std::size_t k = x.size(); k-- > 0;) idx = idx * q + field.to_index(x[k]);
  return idx;
}

std::vector<GfElement> point_at(const GaloisField& field, std::size_t n, std::uint64_t index) {
  const std::uint64_t q = *field.order();
  std::vector<GfElement> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = field.from_index(index % q);
    index /= q;
  }
  return x;
}

PointMap materialize_map(const Matrix<GaloisField>& a, std::uint64_t guard) {
  if (!a.is_square()) throw InputError("point maps need a square matrix");
  const auto& field = a.ring();
  const auto q = field.order().value_or(0);
  const auto count = point_count(q, a.rows(), guard);
  PointMap map{q, a.rows(), std::vector<std::uint32_t>(count)};
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto x = point_at(field, a.rows(), i);
    map.image[i] = static_cast<std::uint32_t>(point_index(field, row_times<GaloisField>(x, a)));
  }
  return map;
}

namespace {

Verdict law_failure(const std::string& law, std::uint64_t point) {
  Verdict v = falsified_exact(law + " fails");
  v.mode = "instance";
  v.witness["point"] = std::to_string(point);
  return v;
}

}  // namespace

Verdict check_operator_laws(std::span<const Matrix<GaloisField>> as, std::span<const PointMap> maps,
                            std::uint64_t guard) {
  if (as.size() != maps.size()) throw InputError("need one table per matrix");
  if (as.empty()) return verified_exact("no operators");
  const auto& field = as.front().ring();
  const auto q = field.order().value_or(0);
  for (std::size_t k = 0; k < as.size(); ++k) {
    if (maps[k].n != as[k].rows() || maps[k].image.size() != point_count(q, as[k].rows(), guard)) {
      throw InputError("table " + std::to_string(k) + " does not match its matrix");
    }
  }
  // Identity goes to the identity table.
  const auto id = materialize_map(Matrix<GaloisField>::identity(field, as.front().rows()), guard);
  for (std::uint64_t x = 0; x < id.image.size(); ++x) {
    if (id.image[x] != x) return law_failure("identity law", x);
  }
  for (std::size_t k = 0; k + 1 < as.size(); ++k) {
    if (as[k].rows() == as[k + 1].rows()) {
      const auto prod = materialize_map(mat_mul(as[k], as[k + 1]), guard);
      for (std::uint64_t x = 0; x < prod.image.size(); ++x) {
        if (prod.image[x] != maps[k + 1].image[maps[k].image[x]]) {
          return law_failure("product law for operators " + std::to_string(k) + "," + std::to_string(k + 1), x);
        }
      }
    }
    const auto sum = direct_sum<GaloisField>({as[k], as[k + 1]});
    const auto dsum = materialize_map(sum.matrix, guard);
    const std::uint64_t stride = maps[k].image.size();
    for (std::uint64_t x = 0; x < dsum.image.size(); ++x) {
      const auto x1 = x % stride;
      const auto x2 = x / stride;
      const std::uint64_t expected = maps[k].image[x1] + stride * maps[k + 1].image[x2];
      if (dsum.image[x] != expected) {
        return law_failure("direct-sum law for operators " + std::to_string(k) + "," + std::to_string(k + 1), x);
      }
    }
  }
  auto v = verified_exact("identity, product and direct-sum laws hold on every point");
  v.mode = "instance";
  return v;
}

Verdict check_operator_laws(std::span<const Matrix<GaloisField>> as, std::uint64_t guard) {
  std::vector<PointMap> maps;
  for (const auto& a : as) maps.push_back(materialize_map(a, guard));
  return check_operator_laws(as, maps, guard);
}

ConfigCount brute_force_census(const Matrix<GaloisField>& r, const ThickProfile& profile,
                               const BoundaryConditions& bcs, std::uint64_t guard) {
  detail::check_census_inputs(r.rows(), r.cols(), profile, bcs);
  const auto& field = r.ring();
  const std::size_t n = r.rows();
  const auto q = field.order().value_or(0);
  const auto total = point_count(q, n, guard);
  std::uint64_t count = 0;

  if (q == 2) {
    // Rows as bit masks; Gray-code walk updates y with one XOR per input.
    std::vector<std::uint64_t> rows(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!field.is_zero(r(i, j))) rows[i] |= std::uint64_t{1} << j;
    std::uint64_t periodic = 0, zero = 0;
    for (std::size_t g = 0; g < n; ++g) {
      const auto b = bcs[profile.axis_of(g)];
      if (b == Boundary::Periodic) periodic |= std::uint64_t{1} << g;
      if (b == Boundary::ZeroInput) zero |= std::uint64_t{1} << g;
    }
    std::uint64_t x = 0, y = 0;
    for (std::uint64_t step = 0; step < total; ++step) {
      if (step > 0) {
        const int bit = __builtin_ctzll(step);
        x ^= std::uint64_t{1} << bit;
        y ^= rows[static_cast<std::size_t>(bit)];
      }
      if (((x ^ y) & periodic) == 0 && (x & zero) == 0) ++count;
    }
  } else {
    std::vector<std::uint64_t> digits(n, 0);
    std::vector<GfElement> x(n, field.zero()), y(n, field.zero());
    for (std::uint64_t step = 0; step < total; ++step) {
      if (step > 0) {
        for (std::size_t k = 0; k < n; ++k) {
          const auto old = x[k];
          digits[k] = (digits[k] + 1) % q;
          x[k] = field.from_index(digits[k]);
          const auto delta = field.sub(x[k], old);
          for (std::size_t j = 0; j < n; ++j) y[j] = field.add(y[j], field.mul(delta, r(k, j)));
          if (digits[k] != 0) break;
        }
      }
      bool ok = true;
      for (std::size_t g = 0; g < n && ok; ++g) {
        const auto b = bcs[profile.axis_of(g)];
        if (b == Boundary::Periodic) ok = x[g] == y[g];
        if (b == Boundary::ZeroInput) ok = field.is_zero(x[g]);
      }
      if (ok) ++count;
    }
  }

  ConfigCount out{field.characteristic(), q, 0};
  std::uint64_t rest = count;
  while (rest > 1 && rest % q == 0) {
    rest /= q;
    ++out.exponent;
  }
  if (rest != 1) throw InvariantViolation("configuration count " + std::to_string(count) + " is not a power of q");
  return out;
}

EdgeConfiguration reconstruct_configuration(const BrickSpec<GaloisField>& brick, const ThickProfile& profile,
                                            std::span<const GfElement> x, std::span<const Vertex> order) {
  if (x.size() != profile.total()) throw InputError("input row does not match the thick dimension");
  EdgeConfiguration config;
  std::vector<GfElement> state(x.begin(), x.end());
  for (const auto& v : order) {
    const auto idx = detail::brick_indices(profile, v);
    std::vector<GfElement> in;
    for (const auto g : idx) in.push_back(state[g]);
    auto out = row_times<GaloisField>(in, brick.entries);
    for (std::size_t a = 0; a < idx.size(); ++a) state[idx[a]] = out[a];
    config.order.push_back(v);
    config.inputs.push_back(std::move(in));
    config.outputs.push_back(std::move(out));
  }
  config.final_state = std::move(state);
  return config;
}

bool configuration_consistent(const BrickSpec<GaloisField>& brick, const ThickProfile& profile,
                              const EdgeConfiguration& config, std::span<const GfElement> x,
                              const Matrix<GaloisField>& r) {
  const auto& spec = profile.spec();
  if (config.order.size() != spec.vertex_count()) return false;
  std::map<Vertex, std::size_t> position;
  for (std::size_t k = 0; k < config.order.size(); ++k) position[config.order[k]] = k;
  const auto y = row_times<GaloisField>(x, r);
  for (std::size_t k = 0; k < config.order.size(); ++k) {
    const auto& v = config.order[k];
    if (!(row_times<GaloisField>(config.inputs[k], brick.entries) == config.outputs[k])) return false;
    std::size_t a = 0;
    for (std::size_t i = 0; i < spec.dim(); ++i) {
      for (std::size_t t = 0; t < spec.thin_dims[i]; ++t, ++a) {
        const auto g = profile.index(i, v, t);
        if (v[i] == 0) {
          if (!(config.inputs[k][a] == x[g])) return false;
        } else {
          Vertex u = v;
          --u[i];
          const auto it = position.find(u);
          if (it == position.end() || it->second >= k) return false;
          if (!(config.outputs[it->second][a] == config.inputs[k][a])) return false;
        }
        if (v[i] + 1 == spec.edges[i] && !(config.outputs[k][a] == y[g])) return false;
      }
    }
  }
  return true;
}

}  // namespace cubic
