#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "upmu/channel.hpp"
#include "upmu/feeder.hpp"
#include "upmu/ilp.hpp"
#include "upmu/solver.hpp"

namespace upmu {

/// Monitored lateral in declared node ids, channel-owning node first.
struct Lateral {
  int own_node = 0;
  int other_node = 0;
  Phase phase = Phase::A;

  bool operator==(const Lateral&) const = default;
};

struct PlanEntry {
  int node_id = 0;
  int devices = 0;
  std::vector<Lateral> laterals;
};

struct PlanTotals {
  int nodes = 0;
  int laterals = 0;
  int devices = 0;

  bool operator==(const PlanTotals&) const = default;
};

struct PlacementPlan {
  int capacity = 3;
  std::vector<PlanEntry> entries;  // ascending node id
  PlanTotals totals;
  std::vector<std::pair<int, PhaseSet>> usm;  // echoed from the feeder
};

/// Plan from a set of channels; device counts are ceil(laterals / capacity).
PlacementPlan plan_from_channels(std::span<const Channel> channels, const FeederModel& model,
                                 int capacity);

PlacementPlan decode_solution(const Solution& solution, const VariableCatalog& catalog,
                              const FeederModel& model);

/// Channels named by the plan, in canonical order. Throws FeederError when a
/// lateral names an unknown node or an edge/phase absent from the feeder.
std::vector<Channel> plan_channels(const PlacementPlan& plan, const FeederModel& model);

/// Channel bit-vector over the catalog. Throws std::invalid_argument for a
/// channel the catalog does not hold.
std::vector<std::uint8_t> encode_channels(std::span<const Channel> channels,
                                          const VariableCatalog& catalog);

/// "(9,1)-(12,1)".
std::string to_string(const Lateral& lateral);

/// Fixed-width text table: node, laterals, devices, USM locations.
std::string format_table(const PlacementPlan& plan);

/// Placement file: `usm <node> <phases>` header lines, then one
/// `pmu-channel <node> <phase> -> <other-node>` line per lateral.
std::string write_placement(const PlacementPlan& plan);

/// Parses a placement file against the feeder. `usm` lines are checked
/// against the feeder but otherwise informational. Errors carry line numbers.
PlacementPlan parse_placement(std::string_view text, const FeederModel& model, int capacity);

nlohmann::json to_json(const PlacementPlan& plan);

}  // namespace upmu
