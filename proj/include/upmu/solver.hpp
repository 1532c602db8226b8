#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "upmu/ilp.hpp"

namespace upmu {

/// Weights on the three objective terms. The placement objective uses all
/// ones; the other settings exist for trade-off studies.
struct ObjectiveWeights {
  int nodes = 1;
  int channels = 1;
  int devices = 1;

  bool operator==(const ObjectiveWeights&) const = default;
};

struct ObjectiveComponents {
  int nodes = 0;
  int channels = 0;
  int devices = 0;

  int total() const { return nodes + channels + devices; }
  int weighted(const ObjectiveWeights& w) const {
    return w.nodes * nodes + w.channels * channels + w.devices * devices;
  }
  auto operator<=>(const ObjectiveComponents&) const = default;
};

struct BoundTrace {
  long long nodes_explored = 0;
  int root_bound = 0;
  int final_bound = 0;
  int greedy_objective = 0;
  /// Incumbent objective after each improvement, starting with the first one.
  std::vector<int> incumbents;
  /// Lower bound each time it moved.
  std::vector<int> bounds;
  /// The lexicographic tie-break finished within the time limit.
  bool tie_break_complete = false;
};

/// Channel bit-vector with the node and device counts derived from it:
/// z_i = [channels at i > 0], n_i = ceil(channels at i / K).
struct Solution {
  std::vector<std::uint8_t> channels;
  std::vector<int> node_active;  // indexed by node - 1
  std::vector<int> devices;      // indexed by node - 1
  ObjectiveComponents components;
  int objective = 0;  // weighted value the solve minimized
  BoundTrace proof;
};

Solution make_solution(const VariableCatalog& catalog, std::vector<std::uint8_t> channels,
                       const ObjectiveWeights& weights = {});

/// Full variable vector X = [z, g, n] of a solution.
std::vector<int> variable_values(const VariableCatalog& catalog, const Solution& solution);

/// Names of rows violated by the solution's variable vector, empty when all hold.
std::vector<std::string> violated_rows(const IlpInstance& instance, const Solution& solution);

enum class SolveStatus { optimal, infeasible, timed_out };

std::string_view to_string(SolveStatus status);

struct SolveOptions {
  double time_limit_seconds = 300.0;
  ObjectiveWeights weights;
  /// Optional starting incumbent; ignored unless it satisfies every row.
  std::optional<std::vector<std::uint8_t>> seed_channels;
};

struct SolveResult {
  SolveStatus status = SolveStatus::infeasible;
  std::optional<Solution> solution;  // best incumbent; proven optimal when status is optimal
  int lower_bound = 0;

  int gap() const { return solution ? solution->objective - lower_bound : 0; }
};

/// Exact minimisation over the channel variables. Coverage and object rows
/// form the covering system; z and n are derived. Among optimal solutions the
/// lexicographically smallest channel vector is returned.
SolveResult solve(const IlpInstance& instance, const SolveOptions& options = {});

/// Greedy cover: repeatedly select the channel satisfying the most unmet
/// covering rows (lowest ordinal on ties), then drop channels that became
/// redundant. Empty optional when some covering row has no channel.
std::optional<std::vector<std::uint8_t>> greedy_cover(const IlpInstance& instance);

}  // namespace upmu
