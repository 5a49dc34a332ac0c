#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cubic {

// Per-axis boundary condition on a block's inputs and outputs.
//   Periodic:  outputs along the axis equal the inputs along it.
//   ZeroInput: inputs along the axis are zero, outputs free.
//   Free:      no condition.
enum class Boundary { Periodic, ZeroInput, Free };

using BoundaryConditions = std::vector<Boundary>;

std::string to_string(Boundary b);
std::string to_string(const BoundaryConditions& bcs);
// Accepts periodic/zero/free (any case) and the one-letter forms P/Z/F.
Boundary parse_boundary(std::string_view text);
// Comma-separated list or a run of one-letter codes ("PZF").
BoundaryConditions parse_boundaries(std::string_view text);
// All 3^d combinations, axis 0 varying slowest.
std::vector<BoundaryConditions> all_boundary_mixes(std::size_t d);

}  // namespace cubic
