#pragma once

#include <vector>

#include "upmu/feeder.hpp"
#include "upmu/ilp.hpp"
#include "upmu/phase_graph.hpp"
#include "upmu/switch_config.hpp"
#include "upmu/zip_model.hpp"

namespace upmu {

struct ProblemOptions {
  int channel_capacity = 3;
  /// When false, zero-injection phases are ignored; USM-reported phases still
  /// count as known injections.
  bool zip_enabled = true;
  bool strict_coverage = false;
};

/// Everything derived from one feeder and a list of configurations.
struct PlacementProblem {
  FeederModel model;
  std::vector<SwitchConfig> configs;
  ProblemOptions options;
  std::vector<PhaseGraph> graphs;
  KnownInjectionSet known;
  std::vector<std::vector<PhaseId>> vzis;
  std::vector<ObjectSetR> objects;
  IlpInstance instance;
};

PlacementProblem assemble_problem(FeederModel model, std::vector<SwitchConfig> configs,
                                  const ProblemOptions& options = {});

}  // namespace upmu
