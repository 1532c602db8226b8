#include "upmu/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace upmu {

namespace {

// Rules compiled against one phase graph. Phase and edge indices are the
// graph's canonical ones.
class Propagator {
 public:
  Propagator(const PhaseGraph& graph, const KnownInjectionSet& known) : graph_(graph) {
    const std::size_t n = graph.phases().size();
    neighbors_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      bool all_normal = !graph.incident(v).empty();
      for (std::size_t e : graph.incident(v)) {
        const PhaseEdge& edge = graph.edges()[e];
        neighbors_[v].push_back(*graph.phase_index(edge.low == graph.phases()[v] ? edge.high : edge.low));
        if (edge.kind != EdgeKind::normal) all_normal = false;
      }
      std::sort(neighbors_[v].begin(), neighbors_[v].end());
      if (all_normal && known.contains(graph.phases()[v])) inference_sites_.push_back(v);
    }
    observed_.assign(n, 0);
  }

  // Phases a channel observes directly, host end first; empty when its edge
  // is absent from the graph.
  std::vector<std::pair<std::size_t, InferenceRule>> direct(const Channel& c) const {
    std::vector<std::pair<std::size_t, InferenceRule>> out;
    auto e = graph_.edge_index(c.low, c.high);
    if (!e) return out;
    const bool normal = graph_.edges()[*e].kind == EdgeKind::normal;
    out.emplace_back(*graph_.phase_index(c.host()), normal ? InferenceRule::direct : InferenceRule::own_end);
    if (normal) out.emplace_back(*graph_.phase_index(c.remote()), InferenceRule::direct);
    return out;
  }

  void reset() { std::fill(observed_.begin(), observed_.end(), 0); }

  void seed(const Channel& c, std::vector<Derivation>* log) {
    const auto hits = direct(c);
    for (std::size_t k = 0; k < hits.size(); ++k) {
      auto [v, rule] = hits[k];
      if (observed_[v]) continue;
      observed_[v] = 1;
      if (log) {
        Derivation d{graph_.phases()[v], rule, {}};
        if (k > 0) d.witnesses.push_back(c.host());
        log->push_back(std::move(d));
      }
    }
  }

  void seed_index(std::size_t v) { observed_[v] = 1; }

  void close(std::vector<Derivation>* log) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t w : inference_sites_) {
        const auto& hood = neighbors_[w];
        std::size_t missing = 0;
        std::size_t last = 0;
        for (std::size_t u : hood) {
          if (!observed_[u]) {
            ++missing;
            last = u;
          }
        }
        if (observed_[w] && missing == 1) {
          observed_[last] = 1;
          changed = true;
          if (log) {
            Derivation d{graph_.phases()[last], InferenceRule::neighbor, {graph_.phases()[w]}};
            for (std::size_t u : hood) {
              if (u != last) d.witnesses.push_back(graph_.phases()[u]);
            }
            log->push_back(std::move(d));
          }
        } else if (!observed_[w] && missing == 0) {
          observed_[w] = 1;
          changed = true;
          if (log) {
            Derivation d{graph_.phases()[w], InferenceRule::self, {}};
            for (std::size_t u : hood) d.witnesses.push_back(graph_.phases()[u]);
            log->push_back(std::move(d));
          }
        }
      }
    }
  }

  bool all_observed() const {
    return std::all_of(observed_.begin(), observed_.end(), [](char c) { return c != 0; });
  }
  const std::vector<char>& observed() const { return observed_; }

 private:
  const PhaseGraph& graph_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<std::size_t> inference_sites_;
  std::vector<char> observed_;
};

}  // namespace

std::string_view to_string(InferenceRule rule) {
  switch (rule) {
    case InferenceRule::direct: return "direct";
    case InferenceRule::own_end: return "own-end";
    case InferenceRule::neighbor: return "kirchhoff-neighbor";
    case InferenceRule::self: return "kirchhoff-self";
  }
  return "?";
}

bool ObservedSet::contains(PhaseId id) const {
  return std::binary_search(observed.begin(), observed.end(), id);
}

ObservedSet propagate_observability(const PhaseGraph& graph, std::span<const Channel> channels,
                                    const KnownInjectionSet& known) {
  Propagator prop(graph, known);
  ObservedSet out;
  for (const Channel& c : channels) prop.seed(c, &out.log);
  prop.close(&out.log);
  for (std::size_t v = 0; v < graph.phases().size(); ++v) {
    if (prop.observed()[v]) out.observed.push_back(graph.phases()[v]);
  }
  return out;
}

Verdict verify_placement(const FeederModel& model, std::span<const SwitchConfig> configs,
                         std::span<const Channel> channels, bool zip_enabled) {
  const KnownInjectionSet known = known_injection_phases(model, zip_enabled);
  Verdict verdict;
  verdict.pass = true;
  for (const SwitchConfig& config : configs) {
    const PhaseGraph graph = build_phase_graph(model, config);
    ConfigVerdict cv{config, {}, {}};
    for (const Channel& c : channels) {
      if (!graph.edge_index(c.low, c.high)) cv.inert.push_back(c);
    }
    const ObservedSet seen = propagate_observability(graph, channels, known);
    for (PhaseId v : graph.phases()) {
      if (!seen.contains(v)) cv.unobserved.push_back(v);
    }
    if (!cv.unobserved.empty()) verdict.pass = false;
    verdict.configs.push_back(std::move(cv));
  }
  return verdict;
}

std::optional<Solution> brute_force_optimum(const FeederModel& model,
                                            std::span<const SwitchConfig> configs,
                                            const VariableCatalog& catalog, bool zip_enabled,
                                            const ObjectiveWeights& weights,
                                            std::size_t max_channel_vars) {
  const std::size_t g = catalog.channel_count();
  if (g > max_channel_vars || g >= 31) {
    throw BruteForceCapExceeded("brute force limited to " + std::to_string(max_channel_vars) +
                                " channel variables, instance has " + std::to_string(g));
  }
  const KnownInjectionSet known = known_injection_phases(model, zip_enabled);
  std::vector<PhaseGraph> graphs;
  for (const SwitchConfig& c : configs) graphs.push_back(build_phase_graph(model, c));
  std::vector<Propagator> props;
  props.reserve(graphs.size());
  for (const PhaseGraph& graph : graphs) props.emplace_back(graph, known);

  // direct_hits[t][j]: phase indices channel j observes directly in config t.
  std::vector<std::vector<std::vector<std::size_t>>> direct_hits(graphs.size());
  for (std::size_t t = 0; t < graphs.size(); ++t) {
    for (std::size_t j = 0; j < g; ++j) {
      std::vector<std::size_t> hits;
      for (auto [v, rule] : props[t].direct(catalog.channel(j).channel)) hits.push_back(v);
      direct_hits[t].push_back(std::move(hits));
    }
  }

  // Channel j is bit (g - 1 - j), so ascending masks are ascending
  // lexicographic channel vectors.
  const std::uint32_t total = 1u << g;
  const int cap = catalog.capacity();
  std::vector<std::pair<int, std::uint32_t>> order;
  order.reserve(total);
  std::vector<int> count(static_cast<std::size_t>(catalog.node_count()), 0);
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t j = 0; j < g; ++j) {
      if (mask >> (g - 1 - j) & 1u) ++count[static_cast<std::size_t>(catalog.host_node(j) - 1)];
    }
    int cost = 0;
    for (int c : count) {
      if (c > 0) cost += weights.nodes + weights.channels * c + weights.devices * ((c + cap - 1) / cap);
    }
    order.emplace_back(cost, mask);
  }
  std::sort(order.begin(), order.end());

  for (const auto& [cost, mask] : order) {
    bool pass = true;
    for (std::size_t t = 0; t < graphs.size() && pass; ++t) {
      Propagator& prop = props[t];
      prop.reset();
      for (std::size_t j = 0; j < g; ++j) {
        if (mask >> (g - 1 - j) & 1u) {
          for (std::size_t v : direct_hits[t][j]) prop.seed_index(v);
        }
      }
      prop.close(nullptr);
      pass = prop.all_observed();
    }
    if (!pass) continue;
    std::vector<std::uint8_t> bits(g, 0);
    for (std::size_t j = 0; j < g; ++j) bits[j] = (mask >> (g - 1 - j) & 1u) ? 1 : 0;
    return make_solution(catalog, std::move(bits), weights);
  }
  return std::nullopt;
}

}  // namespace upmu
