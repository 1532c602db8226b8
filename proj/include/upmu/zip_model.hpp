#pragma once

#include <array>
#include <span>
#include <vector>

#include "upmu/feeder.hpp"
#include "upmu/phase_graph.hpp"

namespace upmu {

/// V_ZI: phases whose injection is known, either as a zero-injection phase or
/// through an unbundled smart meter. Sorted, unique.
struct KnownInjectionSet {
  std::vector<PhaseId> members;

  bool contains(PhaseId id) const;
};

/// Known-injection phases of the feeder. With `include_zip` false only the
/// USM-reported phases are returned.
KnownInjectionSet known_injection_phases(const FeederModel& model, bool include_zip = true);

/// V_ZIS for one configuration: known-injection phases with at least one
/// incident edge, all of them normal.
std::vector<PhaseId> compute_vzis(const PhaseGraph& graph, const KnownInjectionSet& known);

using PhasePair = std::array<PhaseId, 2>;
using PhaseTriplet = std::array<PhaseId, 3>;

/// Object set R for one configuration. Objects are stored with sorted members;
/// both lists are sorted and duplicate-free.
struct ObjectSetR {
  int config_index = 1;
  std::vector<PhasePair> pairs;
  std::vector<PhaseTriplet> triplets;

  bool empty() const { return pairs.empty() && triplets.empty(); }
  /// Every phase appearing in some object, sorted.
  std::vector<PhaseId> member_phases() const;
};

ObjectSetR build_object_set(const PhaseGraph& graph, std::span<const PhaseId> vzis);

}  // namespace upmu
