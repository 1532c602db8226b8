#include "upmu/problem.hpp"

#include <stdexcept>

namespace upmu {

PlacementProblem assemble_problem(FeederModel model, std::vector<SwitchConfig> configs,
                                  const ProblemOptions& options) {
  if (configs.empty()) throw std::invalid_argument("no feasible switch configuration");
  std::vector<PhaseGraph> graphs;
  for (const SwitchConfig& c : configs) graphs.push_back(build_phase_graph(model, c));
  KnownInjectionSet known = known_injection_phases(model, options.zip_enabled);
  std::vector<std::vector<PhaseId>> vzis;
  std::vector<ObjectSetR> objects;
  for (const PhaseGraph& g : graphs) {
    vzis.push_back(compute_vzis(g, known));
    objects.push_back(build_object_set(g, vzis.back()));
  }
  IlpInstance instance = build_constraints(
      model, graphs, objects, BuildOptions{options.channel_capacity, options.strict_coverage});
  return PlacementProblem{std::move(model), std::move(configs), options,           std::move(graphs),
                          std::move(known), std::move(vzis),    std::move(objects), std::move(instance)};
}

}  // namespace upmu
