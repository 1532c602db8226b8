#include "upmu/ilp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace upmu {

std::string to_string(const Channel& c) {
  return to_string(c.host()) + "-" + to_string(c.remote());
}

VariableCatalog::VariableCatalog(std::vector<int> node_ids, std::vector<ChannelVar> channels,
                                 int capacity)
    : node_ids_(std::move(node_ids)), channels_(std::move(channels)), capacity_(capacity) {
  if (capacity_ < 1) throw std::invalid_argument("channel capacity must be at least 1");
  std::sort(channels_.begin(), channels_.end(),
            [](const ChannelVar& a, const ChannelVar& b) { return a.channel < b.channel; });
  for (std::size_t v = 0; v < variable_count(); ++v) by_name_.emplace(name(v), v);
}

VarRole VariableCatalog::role(std::size_t var) const {
  if (var < node_ids_.size()) return VarRole::node_active;
  if (var < node_ids_.size() + channels_.size()) return VarRole::channel;
  return VarRole::devices;
}

std::optional<std::size_t> VariableCatalog::find(const Channel& c) const {
  auto it = std::lower_bound(channels_.begin(), channels_.end(), c,
                             [](const ChannelVar& v, const Channel& key) { return v.channel < key; });
  if (it == channels_.end() || it->channel != c) return std::nullopt;
  return static_cast<std::size_t>(it - channels_.begin());
}

std::string VariableCatalog::name(std::size_t var) const {
  const std::size_t m = node_ids_.size();
  switch (role(var)) {
    case VarRole::node_active:
      return "z_" + std::to_string(node_ids_[var]);
    case VarRole::devices:
      return "n_" + std::to_string(node_ids_[var - m - channels_.size()]);
    case VarRole::channel: {
      const Channel& c = channels_[var - m].channel;
      return std::string(c.end == ChannelEnd::low ? "g_l_" : "g_h_") +
             std::to_string(declared_id(c.low.node)) + "p" + std::to_string(phase_number(c.low.phase)) +
             "_" + std::to_string(declared_id(c.high.node));
    }
  }
  return {};
}

std::optional<std::size_t> VariableCatalog::find_name(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::string_view to_string(RowTag tag) {
  switch (tag) {
    case RowTag::coverage: return "coverage";
    case RowTag::object_pair: return "object-pair";
    case RowTag::object_triplet: return "object-triplet";
    case RowTag::activation: return "activation";
    case RowTag::channel: return "channel";
  }
  return "?";
}

std::size_t IlpInstance::count(RowTag tag) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [&](const Row& r) { return r.tag == tag; }));
}

std::size_t IlpInstance::count(RowTag tag, int config) const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [&](const Row& r) {
    return r.tag == tag && r.config == config;
  }));
}

StructuralInfeasibility::StructuralInfeasibility(PhaseId phase, int config,
                                                 const std::string& message)
    : std::runtime_error(message), phase_(phase), config_(config) {}

std::vector<std::size_t> covering_channels(const VariableCatalog& catalog, const PhaseGraph& graph,
                                           PhaseId v) {
  std::vector<std::size_t> out;
  auto idx = graph.phase_index(v);
  if (!idx) return out;
  for (std::size_t e : graph.incident(*idx)) {
    const PhaseEdge& edge = graph.edges()[e];
    for (ChannelEnd end : {ChannelEnd::low, ChannelEnd::high}) {
      const Channel c{edge.low, edge.high, end};
      if (edge.kind != EdgeKind::normal && c.host() != v) continue;
      if (auto j = catalog.find(c)) out.push_back(*j);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::string phase_label(const FeederModel& model, PhaseId v) {
  return std::to_string(model.declared_id(v.node)) + "p" + std::to_string(phase_number(v.phase));
}

// Sums the covering terms of each member; a channel shared by two members
// (a normal edge joining them) enters with coefficient 2.
std::vector<Term> object_terms(const VariableCatalog& catalog, const PhaseGraph& graph,
                               std::span<const PhaseId> members) {
  std::map<std::size_t, int> coef;
  for (PhaseId p : members) {
    for (std::size_t j : covering_channels(catalog, graph, p)) ++coef[catalog.g(j)];
  }
  std::vector<Term> terms;
  for (const auto& [var, c] : coef) terms.push_back({var, c});
  return terms;
}

}  // namespace

IlpInstance build_constraints(const FeederModel& model, std::span<const PhaseGraph> graphs,
                              std::span<const ObjectSetR> objects, const BuildOptions& options) {
  if (graphs.empty()) throw std::invalid_argument("at least one configuration is required");
  if (objects.size() != graphs.size()) {
    throw std::invalid_argument("one object set per configuration is required");
  }

  // Channel variables over the union of every configuration's E'.
  std::map<Channel, EdgeKind> union_channels;
  for (const PhaseGraph& g : graphs) {
    for (const PhaseEdge& e : g.edges()) {
      union_channels.emplace(Channel{e.low, e.high, ChannelEnd::low}, e.kind);
      union_channels.emplace(Channel{e.low, e.high, ChannelEnd::high}, e.kind);
    }
  }
  std::vector<ChannelVar> vars;
  for (const auto& [c, kind] : union_channels) vars.push_back({c, kind});
  std::vector<int> ids;
  for (const FeederNode& n : model.nodes()) ids.push_back(n.id);

  IlpInstance inst{VariableCatalog(std::move(ids), std::move(vars), options.channel_capacity),
                   {},
                   {},
                   static_cast<int>(graphs.size())};
  const VariableCatalog& cat = inst.catalog;
  inst.objective.assign(cat.variable_count(), 1);

  for (std::size_t t = 0; t < graphs.size(); ++t) {
    const PhaseGraph& graph = graphs[t];
    const ObjectSetR& r = objects[t];
    const int config = graph.config_index();
    const std::string suffix = "_t" + std::to_string(config);
    const std::vector<PhaseId> in_objects = r.member_phases();

    for (PhaseId v : graph.phases()) {
      const bool member = std::binary_search(in_objects.begin(), in_objects.end(), v);
      if (member && !options.strict_coverage) continue;
      const PhaseId one[] = {v};
      Row row{RowTag::coverage, config, object_terms(cat, graph, one), 1,
              "cov" + suffix + "_" + phase_label(model, v)};
      if (row.terms.empty()) {
        throw StructuralInfeasibility(
            v, config,
            "phase " + phase_label(model, v) + " cannot be covered by any channel in configuration " +
                std::to_string(config));
      }
      inst.rows.push_back(std::move(row));
    }
    for (std::size_t k = 0; k < r.pairs.size(); ++k) {
      Row row{RowTag::object_pair, config, object_terms(cat, graph, r.pairs[k]), 1,
              "pair" + suffix + "_" + std::to_string(k + 1)};
      if (row.terms.empty()) {
        throw StructuralInfeasibility(r.pairs[k][0], config,
                                      "object {" + phase_label(model, r.pairs[k][0]) + ", " +
                                          phase_label(model, r.pairs[k][1]) +
                                          "} has no covering channel in configuration " +
                                          std::to_string(config));
      }
      inst.rows.push_back(std::move(row));
    }
    for (std::size_t k = 0; k < r.triplets.size(); ++k) {
      Row row{RowTag::object_triplet, config, object_terms(cat, graph, r.triplets[k]), 1,
              "trip" + suffix + "_" + std::to_string(k + 1)};
      if (row.terms.empty()) {
        throw StructuralInfeasibility(r.triplets[k][0], config,
                                      "triplet object has no covering channel in configuration " +
                                          std::to_string(config));
      }
      inst.rows.push_back(std::move(row));
    }
  }

  // z_i >= g for every channel hosted at node i.
  for (std::size_t j = 0; j < cat.channel_count(); ++j) {
    const int node = cat.host_node(j);
    inst.rows.push_back({RowTag::activation,
                         0,
                         {{cat.z(node), 1}, {cat.g(j), -1}},
                         0,
                         "act_" + cat.name(cat.g(j)).substr(2)});
  }
  // K * n_i >= sum of channels hosted at node i.
  std::vector<std::vector<std::size_t>> hosted(static_cast<std::size_t>(cat.node_count()) + 1);
  for (std::size_t j = 0; j < cat.channel_count(); ++j) {
    hosted[static_cast<std::size_t>(cat.host_node(j))].push_back(j);
  }
  for (int i = 1; i <= cat.node_count(); ++i) {
    Row row{RowTag::channel, 0, {}, 0, "chn_" + std::to_string(cat.declared_id(i))};
    for (std::size_t j : hosted[static_cast<std::size_t>(i)]) row.terms.push_back({cat.g(j), -1});
    row.terms.push_back({cat.n(i), cat.capacity()});
    inst.rows.push_back(std::move(row));
  }
  return inst;
}

}  // namespace upmu
