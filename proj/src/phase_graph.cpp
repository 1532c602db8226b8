#include "upmu/phase_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace upmu {

PhaseGraph::PhaseGraph(int config_index, std::vector<PhaseId> phases, std::vector<PhaseEdge> edges)
    : config_index_(config_index), phases_(std::move(phases)), edges_(std::move(edges)) {
  std::sort(phases_.begin(), phases_.end());
  for (PhaseEdge& e : edges_) {
    if (e.low.phase != e.high.phase || e.low.node == e.high.node) {
      throw std::invalid_argument("phase edge must join one phase at two distinct nodes");
    }
    if (e.high < e.low) std::swap(e.low, e.high);
  }
  std::sort(edges_.begin(), edges_.end(), [](const PhaseEdge& a, const PhaseEdge& b) {
    return std::pair(a.low, a.high) < std::pair(b.low, b.high);
  });
  incidence_.resize(phases_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto lo = phase_index(edges_[i].low);
    auto hi = phase_index(edges_[i].high);
    if (!lo || !hi) throw std::invalid_argument("phase edge references a missing phase");
    incidence_[*lo].push_back(i);
    incidence_[*hi].push_back(i);
  }
}

std::optional<std::size_t> PhaseGraph::phase_index(PhaseId id) const {
  auto it = std::lower_bound(phases_.begin(), phases_.end(), id);
  if (it == phases_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - phases_.begin());
}

std::optional<std::size_t> PhaseGraph::edge_index(PhaseId low, PhaseId high) const {
  if (high < low) std::swap(low, high);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair(low, high),
                             [](const PhaseEdge& e, const std::pair<PhaseId, PhaseId>& key) {
                               return std::pair(e.low, e.high) < key;
                             });
  if (it == edges_.end() || it->low != low || it->high != high) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::vector<PhaseId> PhaseGraph::neighborhood(PhaseId v) const {
  std::vector<PhaseId> out{v};
  if (auto idx = phase_index(v)) {
    for (std::size_t e : incidence_[*idx]) {
      out.push_back(edges_[e].low == v ? edges_[e].high : edges_[e].low);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PhaseGraph build_phase_graph(const FeederModel& model, const SwitchConfig& config) {
  if (!config.is_total_for(model)) {
    throw std::invalid_argument("switch configuration " + config.to_string() +
                                " does not assign every switch of the feeder");
  }
  std::vector<PhaseEdge> edges;
  for (const FeederEdge& e : model.edges()) {
    for (Phase p : e.phases.members()) {
      const PhaseAttributes& attr = e.at(p);
      if (attr.switch_id && config.is_open(*attr.switch_id)) continue;
      edges.push_back({{e.low, p}, {e.high, p}, attr.kind});
    }
  }
  return PhaseGraph(config.index(), model.phases(), std::move(edges));
}

}  // namespace upmu
