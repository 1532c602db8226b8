#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "upmu/ilp.hpp"

namespace upmu {

/// CPLEX LP text: objective, constraints, binaries (z, g) and generals (n).
/// Output is deterministic for a given instance.
std::string export_lp(const IlpInstance& instance);

/// Reads channel values from an external solver's solution file. Any line
/// holding a channel variable name followed by its value is accepted, which
/// covers the usual "name value" layouts (HiGHS, Gurobi .sol, CBC). Values
/// >= 0.5 count as selected. z and n entries are ignored; they are derived.
/// Throws std::runtime_error when no channel variable is found.
std::vector<std::uint8_t> read_solution_channels(std::string_view text,
                                                 const VariableCatalog& catalog);

}  // namespace upmu
