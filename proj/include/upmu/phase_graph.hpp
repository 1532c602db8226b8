#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "upmu/feeder.hpp"
#include "upmu/phase.hpp"
#include "upmu/switch_config.hpp"

namespace upmu {

/// Same-phase connection between two nodes; low < high.
struct PhaseEdge {
  PhaseId low;
  PhaseId high;
  EdgeKind kind = EdgeKind::normal;

  bool operator==(const PhaseEdge&) const = default;
};

/// Phase graph G'(V', E') of one switch configuration. Vertices are sorted by
/// (node, phase) and edges by (low, high); every index derives from that order.
class PhaseGraph {
 public:
  PhaseGraph(int config_index, std::vector<PhaseId> phases, std::vector<PhaseEdge> edges);

  int config_index() const { return config_index_; }
  std::span<const PhaseId> phases() const { return phases_; }
  std::span<const PhaseEdge> edges() const { return edges_; }

  std::optional<std::size_t> phase_index(PhaseId id) const;
  std::optional<std::size_t> edge_index(PhaseId low, PhaseId high) const;

  /// E'_v = L_v U H_v as edge indices, ascending.
  std::span<const std::size_t> incident(std::size_t phase_index) const {
    return incidence_[phase_index];
  }
  /// N_v: v itself plus all adjacent phases, sorted.
  std::vector<PhaseId> neighborhood(PhaseId v) const;

  bool operator==(const PhaseGraph& other) const {
    return config_index_ == other.config_index_ && phases_ == other.phases_ &&
           edges_ == other.edges_;
  }

 private:
  int config_index_;
  std::vector<PhaseId> phases_;
  std::vector<PhaseEdge> edges_;
  std::vector<std::vector<std::size_t>> incidence_;
};

/// Expands G into G' under `config`. Throws std::invalid_argument when the
/// configuration does not assign every switch of the model.
PhaseGraph build_phase_graph(const FeederModel& model, const SwitchConfig& config);

}  // namespace upmu
