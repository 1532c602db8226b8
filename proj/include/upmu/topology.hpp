#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "upmu/feeder.hpp"
#include "upmu/switch_config.hpp"

namespace upmu {

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How a configuration is judged islanded.
enum class IslandingRule {
  /// G stays one connected component, a node-edge counting as present when at
  /// least one of its phases is unswitched or closed.
  node_connectivity,
  /// Stricter: for every phase label, that label's vertices of G' form one
  /// connected component.
  phase_connectivity,
};

struct EnumerationOptions {
  int max_switches = 12;
  IslandingRule rule = IslandingRule::node_connectivity;
};

bool is_feasible(const FeederModel& model, const SwitchConfig& config,
                 IslandingRule rule = IslandingRule::node_connectivity);

/// All feasible assignments in lexicographic order of the open/closed bit
/// vector over ascending switch ids (closed = 0 first), numbered 1..f.
/// Throws TopologyError when the switch count exceeds the cap.
std::vector<SwitchConfig> enumerate_feasible_configs(const FeederModel& model,
                                                     const EnumerationOptions& options = {});

/// Explicit configuration list, one per line: `<switch-id>=open|closed ...`.
/// Blank lines and '#' comments are skipped. Every line must assign every
/// switch of the model. Indices follow line order starting at 1.
std::vector<SwitchConfig> parse_config_list(std::string_view text, const FeederModel& model);

}  // namespace upmu
