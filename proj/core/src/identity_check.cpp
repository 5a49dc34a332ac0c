#include "cubic/identity_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cubic/errors.hpp"
#include "cubic/linalg.hpp"

namespace cubic {

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Verified:
      return "verified";
    case VerdictKind::Falsified:
      return "falsified";
    case VerdictKind::Degenerate:
      return "degenerate";
  }
  return "unknown";
}

Verdict verified_exact(std::string detail) {
  Verdict v;
  v.detail = std::move(detail);
  return v;
}

Verdict falsified_exact(std::string detail) {
  Verdict v;
  v.kind = VerdictKind::Falsified;
  v.detail = std::move(detail);
  return v;
}

Verdict degenerate(std::string detail) {
  Verdict v;
  v.kind = VerdictKind::Degenerate;
  v.detail = std::move(detail);
  return v;
}

double schwartz_zippel_log2_bound(std::uint64_t degree_bound, double log2_field_size, std::size_t trials) {
  if (degree_bound == 0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(trials) * (std::log2(static_cast<double>(degree_bound)) - log2_field_size);
}

Verdict sampled_identity_check(const GaloisField& field, const std::vector<std::string>& names,
                               std::uint64_t degree_bound, std::size_t trials, std::uint64_t seed,
                               const TrialFn& trial) {
  if (trials == 0) throw InputError("at least one trial is required");
  const double log2_q = field.log2_order();
  if (std::log2(static_cast<double>(std::max<std::uint64_t>(degree_bound, 1))) >= log2_q) {
    throw InputError("field " + field.tag() + " is too small for degree bound " + std::to_string(degree_bound));
  }
  std::mt19937_64 rng(seed);
  std::vector<GfElement> values(names.size());
  std::size_t passed = 0;
  std::size_t skipped = 0;
  std::string last_skip;
  while (passed < trials) {
    for (auto& v : values) v = field.random(rng);
    const auto outcome = trial(values);
    if (outcome.kind == TrialOutcome::Kind::Skip) {
      last_skip = outcome.detail;
      if (++skipped > 4 * trials) {
        auto v = degenerate("too many degenerate draws: " + last_skip);
        v.mode = "sampled";
        v.trials = passed;
        return v;
      }
      continue;
    }
    if (outcome.kind == TrialOutcome::Kind::Fail) {
      Verdict v;
      v.kind = VerdictKind::Falsified;
      v.mode = "sampled";
      v.trials = passed + 1;
      v.detail = outcome.detail;
      for (std::size_t i = 0; i < names.size(); ++i) v.witness[names[i]] = field.to_string(values[i]);
      return v;
    }
    ++passed;
  }
  Verdict v;
  v.mode = "sampled";
  v.trials = passed;
  v.log2_failure_bound = schwartz_zippel_log2_bound(degree_bound, log2_q, passed);
  v.detail = "all " + std::to_string(passed) + " trials agree over " + field.tag();
  return v;
}

Verdict random_identity_check(const Matrix<PolyRing>& lhs, const Matrix<PolyRing>& rhs, std::size_t trials,
                              const GaloisField& field, std::uint64_t seed, std::uint64_t degree_bound) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) throw InputError("identity sides differ in shape");
  if (!(lhs.ring() == rhs.ring())) throw InputError("identity sides are over different polynomial rings");
  const PolyRing& ring = lhs.ring();
  if (ring.coeff_modulus() != 0 && ring.coeff_modulus() != field.characteristic()) {
    throw InputError("coefficient ring " + ring.tag() + " does not embed in " + field.tag());
  }
  if (degree_bound == 0) {
    const auto diff = mat_sub(lhs, rhs);
    for (const auto& e : diff.entries()) degree_bound = std::max<std::uint64_t>(degree_bound, e.total_degree());
    degree_bound = std::max<std::uint64_t>(degree_bound, 1);
  }
  return sampled_identity_check(
      field, ring.variables(), degree_bound, trials, seed, [&](std::span<const GfElement> values) {
        for (std::size_t i = 0; i < lhs.rows(); ++i) {
          for (std::size_t j = 0; j < lhs.cols(); ++j) {
            const auto l = poly_specialize(ring, lhs(i, j), field, values);
            const auto r = poly_specialize(ring, rhs(i, j), field, values);
            if (!(l == r)) {
              return TrialOutcome::fail("entry (" + std::to_string(i) + "," + std::to_string(j) + "): " +
                                        field.to_string(l) + " != " + field.to_string(r));
            }
          }
        }
        return TrialOutcome::pass();
      });
}

}  // namespace cubic
