#include "cubic/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cubic/errors.hpp"

namespace cubic {

namespace {

// Wraps nlohmann access errors so callers see one error type for bad input.
template <class Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

const json& need(const json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object with key \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing key \"") + key + "\"");
  return *it;
}

std::size_t need_size(const json& j, const char* key) {
  const auto& v = need(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw InputError(std::string("\"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<std::size_t> size_list(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      throw InputError(std::string(what) + " must hold non-negative integers");
    }
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

const json& rows_of(const json& rows, std::size_t& nrows, std::size_t& ncols) {
  if (!rows.is_array()) throw InputError("matrix entries must be an array of rows");
  nrows = rows.size();
  ncols = nrows == 0 ? 0 : (rows.front().is_array() ? rows.front().size() : 0);
  for (const auto& r : rows) {
    if (!r.is_array() || r.size() != ncols) throw InputError("matrix rows must be arrays of equal length");
  }
  return rows;
}

std::vector<std::size_t> thin_dims_of(const json& j, std::size_t d, std::size_t n) {
  if (j.contains("thin_dims")) {
    auto dims = size_list(j["thin_dims"], "thin_dims");
    if (dims.size() != d) throw InputError("thin_dims has " + std::to_string(dims.size()) + " entries, d = " + std::to_string(d));
    return dims;
  }
  if (n != d) throw InputError("thin_dims is required when the matrix size differs from d");
  return std::vector<std::size_t>(d, 1);
}

}  // namespace

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

json field_to_json(const GaloisField& field) {
  const auto& s = field.spec();
  return {{"p", s.p}, {"m", s.m}, {"modulus", s.modulus}};
}

GaloisField field_from_json(const json& j) {
  return guarded("field", [&] {
    const auto p = static_cast<std::uint32_t>(need_size(j, "p"));
    const auto m = j.contains("m") ? static_cast<std::uint32_t>(need_size(j, "m")) : 1u;
    if (!is_prime(p) || p > kMaxCharacteristic) throw InputError("field characteristic " + std::to_string(p) + " is not a supported prime");
    if (m == 0 || m > kMaxExtensionDegree) throw InputError("extension degree out of range");
    if (!j.contains("modulus")) return GaloisField::extension(p, m);
    ExtFieldSpec spec{p, m, j["modulus"].get<std::vector<std::uint32_t>>()};
    if (spec.modulus.size() != m + 1 || spec.modulus.back() != 1) throw InputError("modulus must be monic of degree m");
    for (const auto c : spec.modulus)
      if (c >= p) throw InputError("modulus coefficient out of range");
    if (!is_irreducible(p, spec.modulus)) throw InputError("modulus is not irreducible");
    return GaloisField(std::move(spec));
  });
}

json element_to_json(const GaloisField& field, const GfElement& x) { return field.coeffs(x); }

GfElement element_from_json(const GaloisField& field, const json& j) {
  return guarded("field element", [&] {
    if (j.is_number_integer()) {
      const auto v = j.get<std::int64_t>();
      if (v < 0) return field.from_int(v);
      const auto q = field.order();
      if (q && static_cast<std::uint64_t>(v) >= *q) throw InputError("field element index out of range");
      return field.from_index(static_cast<std::uint64_t>(v));
    }
    if (!j.is_array()) throw InputError("field element must be an integer or a coefficient array");
    auto c = j.get<std::vector<std::uint32_t>>();
    if (c.size() > field.degree()) throw InputError("too many coefficients for the field");
    for (const auto x : c)
      if (x >= field.characteristic()) throw InputError("coefficient out of range");
    return field.from_coeffs(c);
  });
}

json poly_to_json(const PolyRing& ring, const MultiPoly& f) {
  json out = json::array();
  for (const auto& t : f.terms()) {
    std::vector<int> e(ring.nvars());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = t.mono.e[i];
    out.push_back(json::array({t.coeff, e}));
  }
  return out;
}

MultiPoly poly_from_json(const PolyRing& ring, const json& j) {
  return guarded("polynomial", [&] {
    if (j.is_string()) return ring.parse(j.get<std::string>());
    if (j.is_number_integer()) return ring.from_int(j.get<std::int64_t>());
    if (!j.is_array()) throw InputError("polynomial must be a term list or an expression string");
    std::vector<Term> terms;
    for (const auto& t : j) {
      if (!t.is_array() || t.size() != 2) throw InputError("term must be [coeff, [exponents]]");
      const auto e = t[1].get<std::vector<std::uint32_t>>();
      if (e.size() != ring.nvars()) throw InputError("exponent vector length does not match the variables");
      Term term;
      term.coeff = t[0].get<std::int64_t>();
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] > 255) throw OverflowError("exponent above 255");
        term.mono.e[i] = static_cast<std::uint8_t>(e[i]);
      }
      terms.push_back(term);
    }
    return ring.from_terms(std::move(terms));
  });
}

json matrix_to_json(const Matrix<GaloisField>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(element_to_json(m.ring(), m(i, k)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"ring", m.ring().tag()}, {"entries", std::move(rows)}};
}

json matrix_to_json(const Matrix<PolyRing>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(poly_to_json(m.ring(), m(i, k)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()},
          {"cols", m.cols()},
          {"ring", m.ring().tag()},
          {"variables", m.ring().variables()},
          {"entries", std::move(rows)}};
}

Matrix<GaloisField> field_matrix_from_json(const GaloisField& field, const json& rows) {
  std::size_t nr = 0, nc = 0;
  rows_of(rows, nr, nc);
  Matrix<GaloisField> m(field, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t k = 0; k < nc; ++k) m(i, k) = element_from_json(field, rows[i][k]);
  return m;
}

Matrix<PolyRing> poly_matrix_from_json(const PolyRing& ring, const json& rows) {
  std::size_t nr = 0, nc = 0;
  rows_of(rows, nr, nc);
  Matrix<PolyRing> m(ring, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t k = 0; k < nc; ++k) m(i, k) = poly_from_json(ring, rows[i][k]);
  return m;
}

json brick_to_json(const BrickSpec<GaloisField>& b) {
  return {{"field", field_to_json(b.entries.ring())},
          {"d", b.dim()},
          {"thin_dims", b.thin_dims},
          {"entries", matrix_to_json(b.entries)["entries"]}};
}

json brick_to_json(const BrickSpec<PolyRing>& b) {
  const auto& r = b.entries.ring();
  return {{"ring", "poly"},
          {"variables", r.variables()},
          {"modulus", r.coeff_modulus()},
          {"d", b.dim()},
          {"thin_dims", b.thin_dims},
          {"entries", matrix_to_json(b.entries)["entries"]}};
}

AnyBrick brick_from_json(const json& j) {
  return guarded("brick", [&]() -> AnyBrick {
    const auto d = need_size(j, "d");
    if (d == 0) throw InputError("brick dimension must be positive");
    const auto& rows = need(j, "entries");
    std::size_t nr = 0, nc = 0;
    rows_of(rows, nr, nc);
    const auto dims = thin_dims_of(j, d, nr);
    if (j.contains("field")) {
      if (j.contains("ring")) throw InputError("brick has both \"field\" and \"ring\"");
      BrickSpec<GaloisField> b{dims, field_matrix_from_json(field_from_json(j["field"]), rows)};
      b.validate();
      return b;
    }
    if (!j.contains("ring") || j["ring"] != "poly") throw InputError("brick needs \"field\" or \"ring\": \"poly\"");
    const auto vars = need(j, "variables").get<std::vector<std::string>>();
    if (vars.size() > kMaxVariables) throw InputError("too many variables");
    const auto mod = j.contains("modulus") ? j["modulus"].get<std::uint64_t>() : 0;
    if (mod != 0 && !is_prime(mod)) throw InputError("polynomial coefficient modulus must be 0 or a prime");
    BrickSpec<PolyRing> b{dims, poly_matrix_from_json(PolyRing(vars, mod), rows)};
    b.validate();
    return b;
  });
}

BrickSpec<GaloisField> field_brick_from_json(const json& j) {
  auto any = brick_from_json(j);
  if (auto* b = std::get_if<BrickSpec<GaloisField>>(&any)) return std::move(*b);
  throw InputError("this command needs a brick over a finite field");
}

LatticeSpec lattice_from_json(const json& j, const std::vector<std::size_t>& thin_dims) {
  return guarded("lattice", [&] {
    LatticeSpec spec;
    if (j.contains("edges")) {
      spec.edges = size_list(j["edges"], "edges");
    } else {
      spec.edges.assign(need_size(j, "d"), need_size(j, "l"));
    }
    spec.thin_dims = j.contains("thin_dims") ? size_list(j["thin_dims"], "thin_dims") : thin_dims;
    spec.validate();
    return spec;
  });
}

json lattice_to_json(const LatticeSpec& spec) { return {{"edges", spec.edges}, {"thin_dims", spec.thin_dims}}; }

json brick4_to_json(const Brick4& b) {
  return {{"field", field_to_json(b.field())},
          {"d", 4},
          {"thin_dims", {1, 1, 1, 1}},
          {"entries", matrix_to_json(b.b)["entries"]}};
}

Brick4 brick4_from_json(const json& j) {
  const auto brick = field_brick_from_json(j);
  if (brick.dim() != 4 || brick.entries.rows() != 4) throw InputError("a 4D brick needs d = 4 and thin dimensions 1");
  return Brick4(brick.entries);
}

json ordering_to_json(const OrderingSpec& o) {
  json j = {{"kind", o.name()}};
  switch (o.kind) {
    case LineOrdering::Lex:
      j["rule"] = "rank of the transverse coordinates, lowest axis most significant";
      break;
    case LineOrdering::Colex:
      j["rule"] = "rank of the transverse coordinates, highest axis most significant";
      break;
    case LineOrdering::Explicit:
      j["perms"] = o.perms;
      break;
  }
  return j;
}

json verdict_to_json(const Verdict& v) {
  json j = {{"verdict", to_string(v.kind)}, {"mode", v.mode}};
  if (v.mode == "sampled") {
    j["trials"] = v.trials;
    j["log2_failure_bound"] = std::isfinite(v.log2_failure_bound) ? json(v.log2_failure_bound) : json("-inf");
  }
  if (!v.detail.empty()) j["detail"] = v.detail;
  if (!v.witness.empty()) j["witness"] = v.witness;
  return j;
}

json report_to_json(const DecompositionReport& r) {
  json j = {{"prop", r.prop}};
  j.update(verdict_to_json(r.verdict));
  j["ordering"] = ordering_to_json(resolved_line_ordering());
  json summands = json::array();
  for (const auto& s : r.summands) {
    summands.push_back({{"kind", to_string(s.kind)}, {"multiplicity", s.multiplicity}, {"dimension", s.dimension}});
  }
  j["summands"] = std::move(summands);
  j["frobenius_power"] = r.frobenius_power;
  j["block_dimension"] = r.block_dimension;
  auto details = r.details;
  details.erase("ordering");
  j["details"] = std::move(details);
  return j;
}

json census_to_json(const ConfigCount& c, const BoundaryConditions& bcs, bool oracle_checked) {
  json b = json::array();
  for (const auto x : bcs) b.push_back(to_string(x));
  json j = {{"q", c.q}, {"exponent", c.exponent}, {"bcs", std::move(b)}, {"oracle_checked", oracle_checked}};
  if (const auto n = c.expanded()) j["count"] = *n;
  return j;
}

json evolution_census_to_json(const EvolutionCensus& e) {
  json summands = json::array();
  for (const auto& s : e.summands()) {
    summands.push_back({{"kind", to_string(s.kind)}, {"multiplicity", s.multiplicity}, {"dimension", s.dimension}});
  }
  return {{"case", to_string(e.kind)},      {"n", e.n},
          {"counts", e.counts},             {"recurrence", e.recurrence},
          {"q_matrix", e.q},                {"frobenius_power", e.frobenius_power},
          {"consistent", e.consistent},     {"summands", std::move(summands)}};
}

json reduced_brick_to_json(const ReducedBrick& r) {
  const auto& alg = r.a.ring();
  json entries = json::array();
  json tags = json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    json row = json::array();
    json trow = json::array();
    for (std::size_t k = 0; k < 3; ++k) {
      row.push_back(matrix_to_json(r.a(i, k))["entries"]);
      trow.push_back(to_string(r.tags[3 * i + k]));
    }
    entries.push_back(std::move(row));
    tags.push_back(std::move(trow));
  }
  return {{"case", to_string(r.chain)},
          {"l", r.l},
          {"field", field_to_json(alg.base())},
          {"entries", std::move(entries)},
          {"tags", std::move(tags)},
          {"flattened", brick_to_json(r.flattened())}};
}

}  // namespace cubic
