#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cubic/galois_field.hpp"
#include "cubic/matrix.hpp"
#include "cubic/multipoly.hpp"

namespace cubic {

enum class VerdictKind { Verified, Falsified, Degenerate };

std::string to_string(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::Verified;
  std::string mode = "symbolic";  // symbolic | sampled | instance
  std::size_t trials = 0;
  // log2 of the probability that a false identity survives every trial; 0 for exact checks.
  double log2_failure_bound = 0.0;
  std::string detail;
  // Falsified: the point that exposed the discrepancy.
  std::map<std::string, std::string> witness;

  bool verified() const { return kind == VerdictKind::Verified; }
  bool falsified() const { return kind == VerdictKind::Falsified; }
};

Verdict verified_exact(std::string detail = {});
Verdict falsified_exact(std::string detail);
Verdict degenerate(std::string detail);

// log2((degree / |F|)^trials).
double schwartz_zippel_log2_bound(std::uint64_t degree_bound, double log2_field_size, std::size_t trials);

struct TrialOutcome {
  enum class Kind { Pass, Fail, Skip } kind = Kind::Pass;
  std::string detail;

  static TrialOutcome pass() { return {}; }
  static TrialOutcome fail(std::string what) { return {Kind::Fail, std::move(what)}; }
  // The sampled point hits a degenerate locus (a vanishing denominator); redraw.
  static TrialOutcome skip(std::string why) { return {Kind::Skip, std::move(why)}; }
};

using TrialFn = std::function<TrialOutcome(std::span<const GfElement> values)>;

// Black-box identity test: every trial draws `names.size()` uniform field
// elements from a generator seeded with `seed` and hands them to `trial`.
// Requires |F| > degree_bound. Skipped draws are redrawn up to 4 * trials times
// before the run is reported as Degenerate.
Verdict sampled_identity_check(const GaloisField& field, const std::vector<std::string>& names,
                               std::uint64_t degree_bound, std::size_t trials, std::uint64_t seed,
                               const TrialFn& trial);

// Entrywise lhs == rhs as polynomial matrices, tested at random points of
// `field`. A zero degree bound means the maximal total degree of lhs - rhs.
Verdict random_identity_check(const Matrix<PolyRing>& lhs, const Matrix<PolyRing>& rhs, std::size_t trials,
                              const GaloisField& field, std::uint64_t seed, std::uint64_t degree_bound = 0);

}  // namespace cubic
