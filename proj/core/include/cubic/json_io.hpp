#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "cubic/census.hpp"
#include "cubic/decomp3d.hpp"
#include "cubic/dim4.hpp"
#include "cubic/evolution.hpp"
#include "cubic/galois_field.hpp"
#include "cubic/lattice.hpp"
#include "cubic/multipoly.hpp"

namespace cubic {

using json = nlohmann::json;

// Parses text; syntax errors become InputError.
json parse_json(std::string_view text);
json read_json_file(const std::string& path);

json field_to_json(const GaloisField& field);
// {"p", "m", "modulus"}; a missing modulus selects the deterministic one.
GaloisField field_from_json(const json& j);

json element_to_json(const GaloisField& field, const GfElement& x);
// Coefficient array or a non-negative integer read as the base-p index.
GfElement element_from_json(const GaloisField& field, const json& j);

// Term list [[coeff, [e_0, e_1, ...]], ...].
json poly_to_json(const PolyRing& ring, const MultiPoly& f);
// Term list or an expression string.
MultiPoly poly_from_json(const PolyRing& ring, const json& j);

json matrix_to_json(const Matrix<GaloisField>& m);
json matrix_to_json(const Matrix<PolyRing>& m);
Matrix<GaloisField> field_matrix_from_json(const GaloisField& field, const json& rows);
Matrix<PolyRing> poly_matrix_from_json(const PolyRing& ring, const json& rows);

using AnyBrick = std::variant<BrickSpec<GaloisField>, BrickSpec<PolyRing>>;

json brick_to_json(const BrickSpec<GaloisField>& b);
json brick_to_json(const BrickSpec<PolyRing>& b);
// {"field": {...} | "ring": "poly", "d", "thin_dims", "entries"}. Polynomial
// bricks carry "variables" and an optional "modulus" (0 = integers).
AnyBrick brick_from_json(const json& j);
BrickSpec<GaloisField> field_brick_from_json(const json& j);

// {"d", "l"} or {"edges"}; thin dimensions default to the brick's.
LatticeSpec lattice_from_json(const json& j, const std::vector<std::size_t>& thin_dims);
json lattice_to_json(const LatticeSpec& spec);

json brick4_to_json(const Brick4& b);
Brick4 brick4_from_json(const json& j);

json ordering_to_json(const OrderingSpec& o);
json verdict_to_json(const Verdict& v);
json report_to_json(const DecompositionReport& r);
json census_to_json(const ConfigCount& c, const BoundaryConditions& bcs, bool oracle_checked);
json evolution_census_to_json(const EvolutionCensus& e);
json reduced_brick_to_json(const ReducedBrick& r);

}  // namespace cubic
