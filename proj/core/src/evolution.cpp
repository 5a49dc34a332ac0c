#include "cubic/evolution.hpp"

#include <algorithm>
#include <cctype>

#include "cubic/symmetric.hpp"

namespace cubic {

std::string to_string(EvolutionCase c) {
  switch (c) {
    case EvolutionCase::TwoD:
      return "2d";
    case EvolutionCase::Generic3d:
      return "3d-generic";
    case EvolutionCase::Symmetric3d:
      return "3d-symmetric";
    case EvolutionCase::Diagonal:
      return "diagonal";
  }
  return "unknown";
}

EvolutionCase parse_evolution_case(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "2d") return EvolutionCase::TwoD;
  if (t == "3d-generic" || t == "3d" || t == "generic") return EvolutionCase::Generic3d;
  if (t == "3d-symmetric" || t == "symmetric") return EvolutionCase::Symmetric3d;
  if (t == "diagonal") return EvolutionCase::Diagonal;
  throw InputError("unknown evolution case '" + std::string(text) + "'");
}

std::vector<SummandCount> EvolutionCensus::summands() const {
  switch (kind) {
    case EvolutionCase::TwoD:
      return {{SummandKind::Brick, counts[0], 2}};
    case EvolutionCase::Generic3d:
      return {{SummandKind::Brick, counts[0], 3}, {SummandKind::TransposedBrick, counts[1], 3}};
    case EvolutionCase::Symmetric3d:
      return {{SummandKind::SimpleSymmetric, counts[0], 3}, {SummandKind::DoubleBrick, counts[1], 6}};
    case EvolutionCase::Diagonal:
      return {{SummandKind::Brick, counts[0], dim}};
  }
  return {};
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("evolution counts exceed 64 bits");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("evolution counts exceed 64 bits");
  return r;
}

std::uint64_t pow2(std::size_t e) {
  if (e >= 64) throw OverflowError("evolution counts exceed 64 bits");
  return std::uint64_t{1} << e;
}

}  // namespace

EvolutionCensus evolution_census_closed_form(EvolutionCase kind, std::size_t n, std::size_t dim) {
  EvolutionCensus c;
  c.kind = kind;
  c.n = n;
  c.dim = kind == EvolutionCase::TwoD ? 2 : kind == EvolutionCase::Diagonal ? dim : 3;
  if (c.dim == 0) throw InputError("lattice dimension must be positive");
  c.frobenius_power = pow2(n);
  std::vector<std::uint64_t> init;
  switch (kind) {
    case EvolutionCase::TwoD:
      c.q = {{2}};
      init = {1};
      c.counts = {pow2(n)};
      break;
    case EvolutionCase::Generic3d:
      c.q = {{3, 1}, {1, 3}};
      init = {1, 0};
      c.counts = n == 0 ? std::vector<std::uint64_t>{1, 0}
                        : std::vector<std::uint64_t>{checked_add(pow2(2 * n - 1), pow2(n - 1)),
                                                     pow2(2 * n - 1) - pow2(n - 1)};
      break;
    case EvolutionCase::Symmetric3d:
      c.q = {{2, 1}, {4, 2}};
      init = {1, 0};
      c.counts = n == 0 ? std::vector<std::uint64_t>{1, 0}
                        : std::vector<std::uint64_t>{pow2(2 * n - 1), pow2(2 * n - 2)};
      break;
    case EvolutionCase::Diagonal:
      c.q = {{pow2(c.dim - 1)}};
      init = {1};
      c.counts = {1};
      for (std::size_t k = 0; k < n; ++k) c.counts[0] = checked_mul(c.counts[0], c.q[0][0]);
      break;
  }
  c.recurrence = init;
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<std::uint64_t> next(init.size(), 0);
    for (std::size_t i = 0; i < init.size(); ++i)
      for (std::size_t j = 0; j < init.size(); ++j)
        next[j] = checked_add(next[j], checked_mul(c.recurrence[i], c.q[i][j]));
    c.recurrence = std::move(next);
  }
  c.consistent = c.recurrence == c.counts;
  return c;
}

std::optional<EvolutionCase> classify_brick(const Matrix<GaloisField>& a) {
  const auto& f = a.ring();
  if (f.characteristic() != 2 || !a.is_square() || a.rows() == 0) return std::nullopt;
  bool diagonal = true;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && !f.is_zero(a(i, j))) diagonal = false;
  if (diagonal) return EvolutionCase::Diagonal;
  if (a.rows() == 2) {
    if (f.is_zero(a(0, 1)) || f.is_zero(a(1, 0))) return std::nullopt;
    return EvolutionCase::TwoD;
  }
  if (a.rows() != 3) return std::nullopt;
  const auto p1 = f.mul(f.mul(a(0, 1), a(1, 2)), a(2, 0));
  const auto p2 = f.mul(f.mul(a(0, 2), a(2, 1)), a(1, 0));
  if (!(p1 == p2)) return EvolutionCase::Generic3d;
  if (!f.is_zero(p1)) return EvolutionCase::Symmetric3d;
  return std::nullopt;
}

Matrix<GaloisField> predicted_evolution_block(EvolutionCase kind, const Matrix<GaloisField>& brick, std::size_t n) {
  const auto& f = brick.ring();
  const auto census = evolution_census_closed_form(kind, n, brick.rows());
  const std::size_t k = brick.rows();
  const auto a = kind == EvolutionCase::Symmetric3d && !(transpose(brick) == brick)
                     ? symmetrize_brick(brick).symmetric
                     : brick;
  const auto at = entry_power(a, census.frobenius_power);
  std::size_t m = 0;
  for (const auto& s : census.summands()) m += s.multiplicity * (s.dimension / k);
  Matrix<GaloisField> out(f, k * m, k * m);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t pos = 0;
      auto put = [&](std::size_t r, std::size_t c, const GfElement& x) { out(i * m + r, j * m + c) = x; };
      switch (kind) {
        case EvolutionCase::TwoD:
        case EvolutionCase::Diagonal:
          for (; pos < m; ++pos) put(pos, pos, at(i, j));
          break;
        case EvolutionCase::Generic3d:
          for (std::size_t c = 0; c < census.counts[0]; ++c, ++pos) put(pos, pos, at(i, j));
          for (std::size_t c = 0; c < census.counts[1]; ++c, ++pos) put(pos, pos, at(j, i));
          break;
        case EvolutionCase::Symmetric3d: {
          for (std::size_t c = 0; c < census.counts[0]; ++c, ++pos) put(pos, pos, at(i, j));
          const bool coupled = (i == 1 && j == 2) || (i == 2 && j == 1);
          for (std::size_t c = 0; c < census.counts[1]; ++c, pos += 2) {
            put(pos, pos, at(i, j));
            put(pos + 1, pos + 1, at(i, j));
            if (coupled) put(pos, pos + 1, at(i, j));
          }
          break;
        }
      }
    }
  return out;
}

namespace {

struct Invariant {
  std::string name;
  std::vector<GfElement> poly;
  std::size_t rank = 0;

  bool operator==(const Invariant&) const = default;
};

std::vector<Invariant> signature(const Matrix<GaloisField>& r, std::size_t k, const std::vector<GfElement>& lambdas) {
  const auto& f = r.ring();
  const std::size_t m = r.rows() / k;
  const auto blk = [&](std::size_t i, std::size_t j) { return thick_block(r, i, j, m); };
  std::vector<Invariant> out;
  out.push_back({"charpoly(R)", charpoly(r)});
  for (std::size_t i = 0; i < k; ++i) out.push_back({"charpoly(R" + std::to_string(i + 1) + std::to_string(i + 1) + ")", charpoly(blk(i, i))});
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      out.push_back({"charpoly(R" + std::to_string(i + 1) + std::to_string(j + 1) + " R" + std::to_string(j + 1) +
                         std::to_string(i + 1) + ")",
                     charpoly(mat_mul(blk(i, j), blk(j, i)))});
  if (k == 3) {
    const auto m1 = mat_mul(mat_mul(blk(0, 1), blk(1, 2)), blk(2, 0));
    const auto m2 = mat_mul(mat_mul(blk(0, 2), blk(2, 1)), blk(1, 0));
    for (const auto& [name, mm] : {std::pair{std::string("R12 R23 R31"), m1}, std::pair{std::string("R13 R32 R21"), m2}}) {
      out.push_back({"charpoly(" + name + ")", charpoly(mm)});
      for (std::size_t l = 0; l < lambdas.size(); ++l) {
        const auto shifted = mat_sub(mm, Matrix<GaloisField>::scalar(f, m, lambdas[l]));
        const auto sq = mat_mul(shifted, shifted);
        out.push_back({"rank(" + name + " - lambda" + std::to_string(l + 1) + ")", {}, rank(shifted)});
        out.push_back({"rank((" + name + " - lambda" + std::to_string(l + 1) + ")^2)", {}, rank(sq)});
      }
    }
  }
  return out;
}

}  // namespace

InvariantComparison compare_block_invariants(const Matrix<GaloisField>& r, const Matrix<GaloisField>& s,
                                             std::size_t spaces, const std::vector<GfElement>& lambdas) {
  InvariantComparison out;
  if (r.rows() != s.rows() || !r.is_square() || !s.is_square() || spaces == 0 || r.rows() % spaces != 0) {
    out.failure = "blocks of size " + std::to_string(r.rows()) + " and " + std::to_string(s.rows()) +
                  " cannot be compared over " + std::to_string(spaces) + " spaces";
    return out;
  }
  const auto sr = signature(r, spaces, lambdas);
  const auto ss = signature(s, spaces, lambdas);
  for (std::size_t i = 0; i < sr.size(); ++i) {
    out.compared.push_back(sr[i].name);
    if (!(sr[i] == ss[i])) {
      out.failure = sr[i].name + " differs from the predicted direct sum";
      break;
    }
  }
  return out;
}

DecompositionReport verify_evolution_detection(EvolutionCase kind, const Matrix<GaloisField>& a, std::size_t n,
                                               std::size_t cap) {
  const auto& f = a.ring();
  if (n == 0) throw InputError("detection needs at least one evolution step");
  const auto found = classify_brick(a);
  if (!found || *found != kind) {
    throw InputError("brick does not satisfy the hypotheses of case " + to_string(kind));
  }
  const auto census = evolution_census_closed_form(kind, n, a.rows());
  DecompositionReport report;
  report.prop = "evolution-" + to_string(kind);
  report.summands = census.summands();
  report.frobenius_power = census.frobenius_power;
  report.details["n"] = n;
  report.details["counts"] = census.counts;
  report.details["ordering"] = resolved_line_ordering().name();

  const auto steps = evolve(make_brick(a), n, 2, cap);
  const auto& r = steps.back().matrix;
  const auto s = predicted_evolution_block(kind, a, n);
  report.block_dimension = r.rows();
  std::vector<GfElement> lambdas;
  if (a.rows() == 3) {
    const auto at = entry_power(a, census.frobenius_power);
    lambdas.push_back(f.mul(f.mul(at(0, 2), at(2, 1)), at(1, 0)));
    const auto l2 = f.mul(f.mul(at(0, 1), at(1, 2)), at(2, 0));
    if (!(l2 == lambdas[0])) lambdas.push_back(l2);
  }
  const auto cmp = compare_block_invariants(r, s, a.rows(), lambdas);
  report.details["compared"] = cmp.compared;
  if (cmp.failure) {
    report.verdict = falsified_exact(*cmp.failure);
    report.verdict.mode = "instance";
    return report;
  }
  report.verdict = verified_exact("all invariants match the predicted direct sum");
  report.verdict.mode = "instance";
  return report;
}

Matrix<GaloisField> random_case_brick(EvolutionCase kind, const GaloisField& f, std::mt19937_64& rng) {
  for (;;) {
    const std::size_t k = kind == EvolutionCase::TwoD ? 2 : 3;
    Matrix<GaloisField> a(f, k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (kind == EvolutionCase::Diagonal && i != j) continue;
        if (kind == EvolutionCase::Symmetric3d && j < i) {
          a(i, j) = a(j, i);
          continue;
        }
        a(i, j) = f.random_nonzero(rng);
      }
    if (classify_brick(a) == kind) return a;
  }
}

DecompositionReport verify_evolution_sampled(EvolutionCase kind, std::size_t n, const GaloisField& field,
                                             std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InputError("at least one trial is required");
  std::mt19937_64 rng(seed);
  DecompositionReport last;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto a = random_case_brick(kind, field, rng);
    last = verify_evolution_detection(kind, a, n);
    if (!last.verdict.verified()) {
      last.verdict.mode = "sampled";
      last.verdict.trials = t + 1;
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
          last.verdict.witness["a" + std::to_string(i + 1) + std::to_string(j + 1)] = field.to_string(a(i, j));
      return last;
    }
  }
  last.verdict.mode = "sampled";
  last.verdict.trials = trials;
  last.verdict.detail = "invariants match the predicted direct sum for " + std::to_string(trials) +
                        " random bricks over " + field.tag();
  return last;
}

}  // namespace cubic
