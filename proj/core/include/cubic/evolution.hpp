#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubic/decomp3d.hpp"

namespace cubic {

// Diagonal bricks are outside the decomposition theorems but evolve trivially:
// every summand is a 1x1 block a_ii^(2^n).
enum class EvolutionCase { TwoD, Generic3d, Symmetric3d, Diagonal };

std::string to_string(EvolutionCase c);
EvolutionCase parse_evolution_case(std::string_view text);

struct EvolutionCensus {
  EvolutionCase kind = EvolutionCase::Generic3d;
  std::size_t n = 0;
  std::size_t dim = 3;                          // lattice dimension
  std::vector<std::uint64_t> counts;            // closed form
  std::vector<std::uint64_t> recurrence;        // initial vector times Q^n
  std::vector<std::vector<std::uint64_t>> q;    // transition matrix
  std::uint64_t frobenius_power = 1;            // 2^n
  bool consistent = false;

  std::vector<SummandCount> summands() const;
};

// Closed form and recurrence for n steps; `dim` matters for Diagonal only.
// Throws OverflowError when the counts leave 64 bits.
EvolutionCensus evolution_census_closed_form(EvolutionCase kind, std::size_t n, std::size_t dim = 3);

// Which evolution law a brick over GF(2^m) follows, if any. Bricks that are
// only symmetrizable count as Symmetric3d.
std::optional<EvolutionCase> classify_brick(const Matrix<GaloisField>& a);

// The direct sum predicted after n steps, arranged by thick space: block
// (i, j) collects the (i, j) entries of every summand.
Matrix<GaloisField> predicted_evolution_block(EvolutionCase kind, const Matrix<GaloisField>& a, std::size_t n);

struct InvariantComparison {
  std::optional<std::string> failure;
  std::vector<std::string> compared;
};

// Characteristic polynomials of r, r_ii, r_ij r_ji and, for three spaces, both
// cyclic triple products, plus ranks of (M - lambda)^k for k = 1, 2; r and s
// split into `spaces` equal thick spaces.
InvariantComparison compare_block_invariants(const Matrix<GaloisField>& r, const Matrix<GaloisField>& s,
                                             std::size_t spaces, const std::vector<GfElement>& lambdas);

// Compares n-step evolution of `a` with the predicted sum through
// compare_block_invariants.
DecompositionReport verify_evolution_detection(EvolutionCase kind, const Matrix<GaloisField>& a, std::size_t n,
                                               std::size_t cap = kDefaultDimensionCap);

// Same, for `trials` random bricks of the given case.
DecompositionReport verify_evolution_sampled(EvolutionCase kind, std::size_t n, const GaloisField& field,
                                             std::size_t trials, std::uint64_t seed);

// Random brick satisfying the hypotheses of the case.
Matrix<GaloisField> random_case_brick(EvolutionCase kind, const GaloisField& field, std::mt19937_64& rng);

}  // namespace cubic
