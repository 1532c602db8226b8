#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "upmu/channel.hpp"
#include "upmu/feeder.hpp"
#include "upmu/ilp.hpp"
#include "upmu/phase_graph.hpp"
#include "upmu/solver.hpp"
#include "upmu/switch_config.hpp"
#include "upmu/zip_model.hpp"

namespace upmu {

// Independent observability check by electrical reasoning. The rules:
//   direct     a channel on a normal edge observes both end phases
//   own-end    a channel on a regulator or distributed-load edge observes its host end
//   neighbor   a known-injection phase w whose incident edges are all normal,
//              observed together with all but one neighbour, reveals that neighbour
//   self       such a w with every neighbour observed is itself observed

enum class InferenceRule : std::uint8_t { direct, own_end, neighbor, self };

std::string_view to_string(InferenceRule rule);

struct Derivation {
  PhaseId phase;
  InferenceRule rule = InferenceRule::direct;
  std::vector<PhaseId> witnesses;
};

struct ObservedSet {
  std::vector<PhaseId> observed;  // sorted
  std::vector<Derivation> log;    // in derivation order

  bool contains(PhaseId id) const;
};

/// Least fixed point of the rules above. Channels on edges absent from the
/// graph observe nothing.
ObservedSet propagate_observability(const PhaseGraph& graph, std::span<const Channel> channels,
                                    const KnownInjectionSet& known);

struct ConfigVerdict {
  SwitchConfig config;
  std::vector<PhaseId> unobserved;
  /// Channels whose edge is missing in this configuration.
  std::vector<Channel> inert;
};

struct Verdict {
  bool pass = false;
  std::vector<ConfigVerdict> configs;
};

/// Propagates the plan in every configuration. Known injections follow the
/// same ZIP/USM rule as the ILP (USM phases always count).
Verdict verify_placement(const FeederModel& model, std::span<const SwitchConfig> configs,
                         std::span<const Channel> channels, bool zip_enabled);

class BruteForceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive search over every subset of the catalog's channels, keeping
/// those that verify, minimising the weighted objective with the
/// lexicographically smallest channel vector on ties. Empty when no subset
/// verifies. Throws BruteForceCapExceeded above `max_channel_vars`.
std::optional<Solution> brute_force_optimum(const FeederModel& model,
                                            std::span<const SwitchConfig> configs,
                                            const VariableCatalog& catalog, bool zip_enabled,
                                            const ObjectiveWeights& weights = {},
                                            std::size_t max_channel_vars = 16);

}  // namespace upmu
