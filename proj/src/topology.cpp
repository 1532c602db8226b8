#include "upmu/topology.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

#include "upmu/phase_graph.hpp"

namespace upmu {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

bool node_connected(const FeederModel& model, const SwitchConfig& config) {
  DisjointSets sets(static_cast<std::size_t>(model.node_count()) + 1);
  for (const FeederEdge& e : model.edges()) {
    bool live = false;
    for (Phase p : e.phases.members()) {
      const auto& sw = e.at(p).switch_id;
      if (!sw || !config.is_open(*sw)) live = true;
    }
    if (live) sets.unite(static_cast<std::size_t>(e.low), static_cast<std::size_t>(e.high));
  }
  const std::size_t root = sets.find(1);
  for (int i = 2; i <= model.node_count(); ++i) {
    if (sets.find(static_cast<std::size_t>(i)) != root) return false;
  }
  return true;
}

bool phase_connected(const FeederModel& model, const SwitchConfig& config) {
  const PhaseGraph graph = build_phase_graph(model, config);
  DisjointSets sets(graph.phases().size());
  for (const PhaseEdge& e : graph.edges()) {
    sets.unite(*graph.phase_index(e.low), *graph.phase_index(e.high));
  }
  for (Phase label : kAllPhases) {
    std::optional<std::size_t> root;
    for (std::size_t i = 0; i < graph.phases().size(); ++i) {
      if (graph.phases()[i].phase != label) continue;
      if (!root) {
        root = sets.find(i);
      } else if (sets.find(i) != *root) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

bool is_feasible(const FeederModel& model, const SwitchConfig& config, IslandingRule rule) {
  if (!config.is_total_for(model)) {
    throw std::invalid_argument("switch configuration does not assign every switch");
  }
  return rule == IslandingRule::node_connectivity ? node_connected(model, config)
                                                  : phase_connected(model, config);
}

std::vector<SwitchConfig> enumerate_feasible_configs(const FeederModel& model,
                                                     const EnumerationOptions& options) {
  const auto& ids = model.switch_ids();
  const int s = static_cast<int>(ids.size());
  if (s > options.max_switches) {
    throw TopologyError("feeder has " + std::to_string(s) + " switches, above the enumeration cap of " +
                        std::to_string(options.max_switches) +
                        "; list configurations explicitly with --configs");
  }
  std::vector<SwitchConfig> out;
  const unsigned long long total = 1ULL << s;
  for (unsigned long long mask = 0; mask < total; ++mask) {
    std::vector<std::pair<int, SwitchState>> a;
    a.reserve(ids.size());
    for (int j = 0; j < s; ++j) {
      const bool open = (mask >> (s - 1 - j)) & 1ULL;
      a.emplace_back(ids[static_cast<std::size_t>(j)], open ? SwitchState::open : SwitchState::closed);
    }
    SwitchConfig candidate(static_cast<int>(out.size()) + 1, std::move(a));
    if (is_feasible(model, candidate, options.rule)) out.push_back(std::move(candidate));
  }
  return out;
}

std::vector<SwitchConfig> parse_config_list(std::string_view text, const FeederModel& model) {
  std::vector<SwitchConfig> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string word;
    std::vector<std::pair<int, SwitchState>> a;
    while (words >> word) {
      auto eq = word.find('=');
      int id = 0;
      auto [ptr, ec] = std::from_chars(word.data(), word.data() + (eq == std::string::npos ? 0 : eq), id);
      if (eq == std::string::npos || ec != std::errc() || ptr != word.data() + eq || id <= 0) {
        throw TopologyError("line " + std::to_string(number) + ": expected <switch-id>=open|closed, got '" +
                            word + "'");
      }
      const std::string state = word.substr(eq + 1);
      if (state != "open" && state != "closed") {
        throw TopologyError("line " + std::to_string(number) + ": unknown switch state '" + state + "'");
      }
      a.emplace_back(id, state == "open" ? SwitchState::open : SwitchState::closed);
    }
    if (a.empty()) continue;
    SwitchConfig config;
    try {
      config = SwitchConfig(static_cast<int>(out.size()) + 1, std::move(a));
    } catch (const std::invalid_argument& e) {
      throw TopologyError("line " + std::to_string(number) + ": " + e.what());
    }
    if (!config.is_total_for(model)) {
      throw TopologyError("line " + std::to_string(number) +
                          ": configuration must assign exactly the feeder's switches");
    }
    out.push_back(std::move(config));
  }
  if (out.empty() && model.switch_ids().empty()) out.emplace_back();
  if (out.empty()) throw TopologyError("configuration list is empty");
  return out;
}

}  // namespace upmu
