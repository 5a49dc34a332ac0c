#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cubic/census.hpp"
#include "cubic/decomp3d.hpp"
#include "cubic/dim4.hpp"
#include "cubic/errors.hpp"
#include "cubic/evolution.hpp"
#include "cubic/json_io.hpp"
#include "cubic/point_map.hpp"
#include "cubic/symmetric.hpp"
#include "cubic/version.hpp"

using namespace cubic;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::size_t cap_dim = kDefaultDimensionCap;
  std::uint64_t cap_points = kCensusGuard;
  bool no_timestamp = false;
};

struct VerifyArgs {
  std::string suite;
  std::string mode = "symbolic";
  std::size_t trials = 32;
  std::uint32_t field_degree = 16;
  std::uint32_t p = 2;
  bool allow_large_p = false;
  std::string brick;
  std::string chain = "both";
  std::size_t n = 1;
  std::size_t l = 2;
  std::size_t evolution_trials = 3;
};

struct BlockArgs {
  std::string brick;
  std::string lattice;
  std::size_t l = 2;
  std::string order = "layered";
  std::string bcs;
  bool oracle = false;
  std::size_t steps = 1;
  std::string chain = "a";
};

// Result list plus the flags that decide the exit code.
struct Outcome {
  json results = json::array();
  json degenerate = json::array();
  bool falsified = false;

  void add(const json& r) {
    if (r.contains("verdict")) {
      if (r["verdict"] == "falsified") falsified = true;
      if (r["verdict"] == "degenerate") degenerate.push_back(r.value("prop", std::string("?")));
    }
    results.push_back(r);
  }
  void add(const DecompositionReport& r) { add(report_to_json(r)); }
};

// Inline JSON when the argument starts with '{', a file path otherwise.
json load_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return parse_json(arg);
  return read_json_file(arg);
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (const char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// One row per result, columns in first-seen key order; nested values as JSON text.
std::string to_csv(const json& results) {
  std::vector<std::string> cols;
  for (const auto& r : results)
    for (const auto& [k, _] : r.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += "\n";
  for (const auto& r : results) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ",";
      if (r.contains(cols[i])) out += csv_cell(r[cols[i]]);
    }
    out += "\n";
  }
  return out;
}

int emit(const Globals& g, const std::string& command, const Outcome& o) {
  json doc = {{"tool", "cubic"},
              {"version", std::string(kVersion)},
              {"command", command},
              {"seed", g.seed},
              {"ordering", ordering_to_json(resolved_line_ordering())}};
  if (!g.no_timestamp) doc["timestamp"] = timestamp_utc();
  doc["results"] = o.results;
  doc["degenerate"] = o.degenerate;
  const int code = o.falsified ? 1 : 0;
  doc["exit_code"] = code;
  const std::string text = g.format == "csv" ? to_csv(o.results) : doc.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(g.out);
    if (!f) throw InputError("cannot write " + g.out);
    f << text;
  }
  return code;
}

json tag_suite(json r, const std::string& suite) {
  r["suite"] = suite;
  return r;
}

GaloisField char2_field(std::uint32_t m) { return GaloisField::extension(2, m); }

Matrix<GaloisField> brick_matrix(const std::string& arg, std::size_t size) {
  const auto b = field_brick_from_json(load_json_arg(arg));
  if (b.entries.rows() != size) throw InputError("expected a " + std::to_string(size) + "x" + std::to_string(size) + " brick");
  return b.entries;
}

std::vector<ChainCase> chain_cases(const std::string& text) {
  if (text == "both") return {ChainCase::Periodic4, ChainCase::ZeroInput4};
  return {parse_chain_case(text)};
}

void suite_2d(const VerifyArgs& a, const Globals& g, Outcome& o) {
  if (!a.brick.empty()) {
    o.add(tag_suite(report_to_json(verify_decomposition_2d_instance(brick_matrix(a.brick, 2))), "2d"));
    return;
  }
  const auto field = char2_field(a.field_degree);
  if (a.mode == "sampled") {
    o.add(tag_suite(report_to_json(verify_decomposition_2d_sampled(field, a.trials, g.seed)), "2d"));
  } else {
    o.add(tag_suite(report_to_json(verify_decomposition_2d_symbolic()), "2d"));
  }
  o.add(tag_suite(report_to_json(verify_evolution_sampled(EvolutionCase::TwoD, 2, field, a.evolution_trials, g.seed)),
                  "2d"));
}

void suite_b3(const VerifyArgs& a, const Globals& g, Outcome& o) {
  if (a.p > 7 && !a.allow_large_p) throw InputError("p > 7 needs --allow-large-p");
  B3Options opt;
  opt.p = a.p;
  opt.symbolic = a.mode != "sampled";
  opt.trials = a.trials;
  opt.extension_degree = a.field_degree;
  opt.seed = g.seed;
  const auto r = verify_b3(opt);
  o.add(tag_suite(report_to_json(r.scalar), "b3"));
  o.add(tag_suite(report_to_json(r.spectrum), "b3"));
}

void suite_diag3(const VerifyArgs& a, const Globals& g, Outcome& o) {
  if (!a.brick.empty()) {
    o.add(tag_suite(report_to_json(verify_decomposition_3d_instance(brick_matrix(a.brick, 3))), "diag3"));
  } else if (a.mode == "sampled") {
    o.add(tag_suite(report_to_json(verify_decomposition_3d_sampled(char2_field(a.field_degree), a.trials, g.seed)),
                    "diag3"));
  } else {
    o.add(tag_suite(report_to_json(verify_decomposition_3d_symbolic()), "diag3"));
  }
}

void suite_symmetric(const VerifyArgs& a, const Globals&, Outcome& o) {
  for (const auto level : {SymmetricLevel::Simple, SymmetricLevel::Double}) {
    const auto r = a.brick.empty() ? verify_symmetric_decomposition_symbolic(level)
                                   : verify_symmetric_decomposition_instance(brick_matrix(a.brick, 3), level);
    o.add(tag_suite(report_to_json(r), "symmetric"));
  }
}

Brick4 brick4_arg(const VerifyArgs& a, ChainCase c, std::size_t n, std::mt19937_64& rng) {
  if (!a.brick.empty()) return brick4_from_json(load_json_arg(a.brick));
  return random_nondegenerate_brick4(char2_field(8), c, n, rng);
}

void suite_algebra(const VerifyArgs& a, const Globals& g, Outcome& o) {
  std::mt19937_64 rng(g.seed);
  std::size_t n = 0;
  while ((std::size_t{1} << n) < a.l) ++n;
  for (const auto c : chain_cases(a.chain)) {
    const auto b = brick4_arg(a, c, n, rng);
    const auto red = reduce_chain_4d(b, a.l, c);
    auto r = report_to_json(verify_decomposition_3d_algebra(red.a));
    r["details"]["case"] = to_string(c);
    r["details"]["l"] = a.l;
    o.add(tag_suite(r, "algebra"));
  }
}

void suite_dim4(const VerifyArgs& a, const Globals& g, Outcome& o) {
  std::mt19937_64 rng(g.seed);
  for (const auto c : chain_cases(a.chain)) {
    const auto b = brick4_arg(a, c, a.n, rng);
    o.add(tag_suite(report_to_json(verify_stratification(b, a.n, c)), "dim4"));
    json cross = {{"prop", "eB-census"}, {"case", to_string(c)}, {"l", std::size_t{1} << a.n}};
    std::size_t equal = 0;
    json mismatches = json::array();
    for (const auto& bcs : all_boundary_mixes(3)) {
      const auto x = census_cross_check_4d(b, std::size_t{1} << a.n, c, bcs);
      if (x.equal()) {
        ++equal;
      } else {
        mismatches.push_back({{"bcs", to_string(bcs)}, {"genuine", x.genuine.exponent}, {"reduced", x.reduced.exponent}});
      }
    }
    cross["verdict"] = mismatches.empty() ? "verified" : "falsified";
    cross["mode"] = "instance";
    cross["details"] = {{"mixes_equal", equal}, {"mismatches", mismatches}};
    o.add(tag_suite(cross, "dim4"));
  }
}

int cmd_verify(const VerifyArgs& a, const Globals& g) {
  if (a.mode != "symbolic" && a.mode != "sampled") throw InputError("--mode must be symbolic or sampled");
  Outcome o;
  const auto run = [&](const std::string& s) {
    if (s == "2d") suite_2d(a, g, o);
    if (s == "b3") suite_b3(a, g, o);
    if (s == "diag3") suite_diag3(a, g, o);
    if (s == "symmetric") suite_symmetric(a, g, o);
    if (s == "algebra") suite_algebra(a, g, o);
    if (s == "dim4") suite_dim4(a, g, o);
  };
  if (a.suite == "all") {
    if (!a.brick.empty()) throw InputError("--brick cannot be combined with the all suite");
    for (const auto* s : {"2d", "b3", "diag3", "symmetric", "algebra", "dim4"}) run(s);
  } else {
    run(a.suite);
  }
  return emit(g, "verify " + a.suite, o);
}

LatticeSpec lattice_arg(const BlockArgs& a, const std::vector<std::size_t>& thin_dims) {
  if (!a.lattice.empty()) return lattice_from_json(load_json_arg(a.lattice), thin_dims);
  return LatticeSpec{std::vector<std::size_t>(thin_dims.size(), a.l), thin_dims};
}

void check_cap(std::size_t total, const Globals& g) {
  if (total > g.cap_dim) {
    throw ResourceError("thick dimension " + std::to_string(total) + " exceeds the --cap-dim cap of " +
                        std::to_string(g.cap_dim));
  }
}

template <Ring R>
json assemble_json(const BrickSpec<R>& brick, const BlockArgs& a, const Globals& g) {
  const auto spec = lattice_arg(a, brick.thin_dims);
  check_cap(ThickProfile(spec).total(), g);
  std::optional<std::vector<Vertex>> order;
  if (a.order == "random") {
    std::mt19937_64 rng(g.seed);
    order = random_linear_extension(spec, rng);
  } else if (a.order != "layered") {
    throw InputError("--order must be layered or random");
  }
  const auto block = assemble_block(brick, spec, order, resolved_line_ordering());
  json thick = json::array();
  for (std::size_t i = 0; i < block.profile.dim(); ++i) thick.push_back(block.profile.thick_dim(i));
  return {{"lattice", lattice_to_json(spec)},
          {"order", a.order},
          {"thick_dims", thick},
          {"block", brick_to_json(block.as_brick())}};
}

int cmd_assemble(const BlockArgs& a, const Globals& g) {
  const auto any = brick_from_json(load_json_arg(a.brick));
  Outcome o;
  std::visit([&](const auto& b) { o.add(assemble_json(b, a, g)); }, any);
  return emit(g, "assemble", o);
}

int cmd_census(const BlockArgs& a, const Globals& g) {
  const auto brick = field_brick_from_json(load_json_arg(a.brick));
  const auto spec = lattice_arg(a, brick.thin_dims);
  const ThickProfile profile(spec, resolved_line_ordering());
  check_cap(profile.total(), g);
  const auto bcs = a.bcs.empty() ? BoundaryConditions(spec.dim(), Boundary::Periodic) : parse_boundaries(a.bcs);
  const auto r = assemble_block(brick, spec, std::nullopt, resolved_line_ordering()).matrix;
  const auto count = count_configs(r, profile, bcs);
  auto out = census_to_json(count, bcs, a.oracle);
  out["lattice"] = lattice_to_json(spec);
  Outcome o;
  if (a.oracle) {
    const auto brute = brute_force_census(r, profile, bcs, g.cap_points);
    const bool same = brute == count;
    out["oracle_exponent"] = brute.exponent;
    out["verdict"] = same ? "verified" : "falsified";
    out["prop"] = "census-oracle";
  }
  o.add(out);
  return emit(g, "census", o);
}

int cmd_evolve(const BlockArgs& a, const Globals& g) {
  const auto brick = field_brick_from_json(load_json_arg(a.brick));
  if (a.steps == 0) throw InputError("--steps must be positive");
  const std::size_t l = 2;
  std::size_t lines = 1;
  for (std::size_t i = 1; i < brick.dim(); ++i) lines *= l;
  json steps = json::array();
  std::vector<std::size_t> dims = brick.thin_dims;
  for (std::size_t s = 1; s <= a.steps; ++s) {
    std::size_t total = 0;
    for (auto& t : dims) {
      t *= lines;
      total += t;
    }
    check_cap(total, g);
    steps.push_back({{"step", s}, {"thick_dims", dims}, {"dimension", total}});
  }
  json out = {{"prop", "evolution"}, {"steps", steps}, {"l", l}};
  const bool unit_thin = std::all_of(brick.thin_dims.begin(), brick.thin_dims.end(), [](auto t) { return t == 1; });
  std::optional<EvolutionCase> kind;
  if (unit_thin) kind = classify_brick(brick.entries);
  Outcome o;
  if (!kind) {
    out["case"] = nullptr;
    out["predicted"] = nullptr;
    out["detail"] = "brick satisfies none of the evolution laws";
    o.add(out);
    return emit(g, "evolve", o);
  }
  out["case"] = to_string(*kind);
  out["predicted"] = evolution_census_to_json(evolution_census_closed_form(*kind, a.steps, brick.dim()));
  const auto det = verify_evolution_detection(*kind, brick.entries, a.steps, g.cap_dim);
  out["verdict"] = to_string(det.verdict.kind);
  out["mode"] = det.verdict.mode;
  out["detection"] = report_to_json(det);
  o.add(out);
  return emit(g, "evolve", o);
}

int cmd_reduce4d(const BlockArgs& a, const Globals& g) {
  const auto b = brick4_from_json(load_json_arg(a.brick));
  const auto c = parse_chain_case(a.chain);
  auto out = reduced_brick_to_json(reduce_chain_4d(b, a.l, c));
  check_cap(3 * a.l, g);
  if (b.field().characteristic() == 2 && a.l > 0 && (a.l & (a.l - 1)) == 0) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < a.l) ++n;
    const auto nd = nondegeneracy_4d_detail(b, c, n);
    out["nondegenerate"] = nd.holds();
    out["discriminant"] = element_to_json(b.field(), nd.d);
  }
  Outcome o;
  o.add(out);
  return emit(g, "reduce4d", o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic block operators over finite fields: verification, assembly, census, evolution"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--out", g.out, "Output path (stdout when empty)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--cap-dim", g.cap_dim, "Largest thick dimension to assemble")->check(CLI::PositiveNumber);
  app.add_option("--cap-points", g.cap_points, "Largest point set to enumerate")->check(CLI::PositiveNumber);
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit the timestamp for byte-stable reports");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", va.suite, "Suite")
      ->required()
      ->check(CLI::IsMember({"2d", "b3", "diag3", "symmetric", "algebra", "dim4", "all"}));
  verify->add_option("--mode", va.mode, "symbolic or sampled");
  verify->add_option("--trials", va.trials, "Sampled trials")->check(CLI::PositiveNumber);
  verify->add_option("--field-degree", va.field_degree, "Extension degree m of the sampling field")
      ->check(CLI::Range(1u, static_cast<unsigned>(kMaxExtensionDegree)));
  verify->add_option("--p", va.p, "Prime for b3")->check(CLI::Range(2u, 97u));
  verify->add_flag("--allow-large-p", va.allow_large_p, "Permit b3 with p > 7");
  verify->add_option("--brick", va.brick, "Brick JSON file or inline object");
  verify->add_option("--case", va.chain, "Chain case for algebra/dim4: a, b or both");
  verify->add_option("--n", va.n, "Stratification steps for dim4")->check(CLI::Range(1, 2));
  verify->add_option("--l", va.l, "Chain length for algebra")->check(CLI::PositiveNumber);
  verify->add_option("--evolution-trials", va.evolution_trials, "Sampled evolution trials in the 2d suite");

  BlockArgs ba;
  auto* assemble = app.add_subcommand("assemble", "Assemble the block of a brick on a lattice");
  auto* census = app.add_subcommand("census", "Count permitted configurations");
  auto* evolve = app.add_subcommand("evolve", "Iterate block making and predict the summands");
  auto* reduce = app.add_subcommand("reduce4d", "Reduce a 4D brick along a chain of length l");
  for (auto* sc : {assemble, census, evolve, reduce}) sc->add_option("--brick", ba.brick, "Brick JSON file or inline object")->required();
  for (auto* sc : {assemble, census}) {
    sc->add_option("--lattice", ba.lattice, "Lattice JSON file or inline object");
    sc->add_option("--l", ba.l, "Edge length of a cubic lattice")->check(CLI::PositiveNumber);
  }
  assemble->add_option("--order", ba.order, "layered or random vertex order");
  census->add_option("--bcs", ba.bcs, "Per-axis boundary conditions, e.g. PZF (default all periodic)");
  census->add_flag("--oracle", ba.oracle, "Cross-check by enumeration");
  evolve->add_option("--steps", ba.steps, "Evolution steps")->check(CLI::PositiveNumber);
  reduce->add_option("--l", ba.l, "Chain length")->check(CLI::PositiveNumber);
  reduce->add_option("--case", ba.chain, "Chain case a or b");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(va, g);
    if (*assemble) return cmd_assemble(ba, g);
    if (*census) return cmd_census(ba, g);
    if (*evolve) return cmd_evolve(ba, g);
    if (*reduce) return cmd_reduce4d(ba, g);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << "\n";
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
  } catch (const SingularMatrixError& e) {
    std::cerr << "singular: " << e.what() << "\n";
  }
  return 2;
}
