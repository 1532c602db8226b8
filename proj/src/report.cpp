#include "upmu/report.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace upmu {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

PlacementPlan finish_plan(std::map<int, std::vector<Lateral>> by_node, const FeederModel& model,
                          int capacity) {
  PlacementPlan plan;
  plan.capacity = capacity;
  for (auto& [id, laterals] : by_node) {
    std::sort(laterals.begin(), laterals.end(), [&](const Lateral& a, const Lateral& b) {
      const int ia = *model.index_of(a.other_node);
      const int ib = *model.index_of(b.other_node);
      return std::pair(ia, a.phase) < std::pair(ib, b.phase);
    });
    laterals.erase(std::unique(laterals.begin(), laterals.end()), laterals.end());
    PlanEntry e{id, ceil_div(static_cast<int>(laterals.size()), capacity), std::move(laterals)};
    plan.totals.nodes += 1;
    plan.totals.laterals += static_cast<int>(e.laterals.size());
    plan.totals.devices += e.devices;
    plan.entries.push_back(std::move(e));
  }
  for (const FeederNode& n : model.nodes()) {
    if (!n.usm.empty()) plan.usm.emplace_back(n.id, n.usm);
  }
  std::sort(plan.usm.begin(), plan.usm.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return plan;
}

}  // namespace

PlacementPlan plan_from_channels(std::span<const Channel> channels, const FeederModel& model,
                                 int capacity) {
  std::map<int, std::vector<Lateral>> by_node;
  for (const Channel& c : channels) {
    const int own = model.declared_id(c.host().node);
    by_node[own].push_back({own, model.declared_id(c.remote().node), c.host().phase});
  }
  return finish_plan(std::move(by_node), model, capacity);
}

PlacementPlan decode_solution(const Solution& solution, const VariableCatalog& catalog,
                              const FeederModel& model) {
  std::vector<Channel> chosen;
  for (std::size_t j = 0; j < solution.channels.size(); ++j) {
    if (solution.channels[j]) chosen.push_back(catalog.channel(j).channel);
  }
  return plan_from_channels(chosen, model, catalog.capacity());
}

std::vector<Channel> plan_channels(const PlacementPlan& plan, const FeederModel& model) {
  std::vector<Channel> out;
  for (const PlanEntry& entry : plan.entries) {
    for (const Lateral& lat : entry.laterals) {
      auto own = model.index_of(lat.own_node);
      auto other = model.index_of(lat.other_node);
      if (!own || !other) {
        throw FeederError("plan names unknown node in lateral " + to_string(lat));
      }
      auto e = model.find_edge(*own, *other);
      if (!e || !model.edges()[*e].phases.contains(lat.phase)) {
        throw FeederError("plan names lateral " + to_string(lat) + " absent from the feeder");
      }
      const PhaseId a{*own, lat.phase};
      const PhaseId b{*other, lat.phase};
      out.push_back(a < b ? Channel{a, b, ChannelEnd::low} : Channel{b, a, ChannelEnd::high});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint8_t> encode_channels(std::span<const Channel> channels,
                                          const VariableCatalog& catalog) {
  std::vector<std::uint8_t> bits(catalog.channel_count(), 0);
  for (const Channel& c : channels) {
    auto j = catalog.find(c);
    if (!j) throw std::invalid_argument("channel " + to_string(c) + " is not a variable of this instance");
    bits[*j] = 1;
  }
  return bits;
}

std::string to_string(const Lateral& l) {
  const std::string p = std::to_string(phase_number(l.phase));
  return "(" + std::to_string(l.own_node) + "," + p + ")-(" + std::to_string(l.other_node) + "," + p + ")";
}

std::string format_table(const PlacementPlan& plan) {
  std::string usm;
  for (const auto& [id, phases] : plan.usm) {
    (void)phases;
    if (!usm.empty()) usm += ",";
    usm += std::to_string(id);
  }
  std::vector<std::string> monitored;
  std::size_t width = std::string("Phases monitored").size();
  for (const PlanEntry& e : plan.entries) {
    std::string s;
    for (const Lateral& l : e.laterals) {
      if (!s.empty()) s += "; ";
      s += to_string(l);
    }
    width = std::max(width, s.size());
    monitored.push_back(std::move(s));
  }
  std::ostringstream out;
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  out << pad("Node", 6) << pad("Phases monitored", width + 2) << pad("# uPMU", 8) << "USM location\n";
  for (std::size_t i = 0; i < plan.entries.size(); ++i) {
    const PlanEntry& e = plan.entries[i];
    out << pad(std::to_string(e.node_id), 6) << pad(monitored[i], width + 2)
        << pad(std::to_string(e.devices), 8) << (i == 0 ? usm : "") << '\n';
  }
  out << "Totals: " << plan.totals.nodes << " nodes, " << plan.totals.laterals << " monitored laterals, "
      << plan.totals.devices << " uPMUs (K = " << plan.capacity << ")\n";
  return out.str();
}

std::string write_placement(const PlacementPlan& plan) {
  std::ostringstream out;
  for (const auto& [id, phases] : plan.usm) out << "usm " << id << ' ' << phases.to_string() << '\n';
  for (const PlanEntry& e : plan.entries) {
    for (const Lateral& l : e.laterals) {
      out << "pmu-channel " << l.own_node << ' ' << phase_letter(l.phase) << " -> " << l.other_node << '\n';
    }
  }
  return out.str();
}

PlacementPlan parse_placement(std::string_view text, const FeederModel& model, int capacity) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  std::map<int, std::vector<Lateral>> by_node;
  auto node_id = [&](const std::string& token, int column) {
    int id = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), id);
    if (ec != std::errc() || ptr != token.data() + token.size() || !model.index_of(id)) {
      throw FeederError("unknown node '" + token + "'", number, column);
    }
    return id;
  };
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> t;
    for (std::string w; words >> w;) t.push_back(w);
    if (t.empty()) continue;
    if (t[0] == "usm") {
      if (t.size() != 3) throw FeederError("expected 'usm <node> <phases>'", number, 1);
      const int id = node_id(t[1], 2);
      auto phases = PhaseSet::parse(t[2]);
      if (!phases || !phases->is_subset_of(model.node(*model.index_of(id)).usm)) {
        throw FeederError("usm line disagrees with the feeder at node " + t[1], number, 3);
      }
    } else if (t[0] == "pmu-channel") {
      if (t.size() != 5 || t[3] != "->") {
        throw FeederError("expected 'pmu-channel <node> <phase> -> <other-node>'", number, 1);
      }
      const int own = node_id(t[1], 2);
      const int other = node_id(t[4], 5);
      std::optional<Phase> phase;
      if (t[2].size() == 1) phase = parse_phase(t[2][0]);
      if (!phase) throw FeederError("invalid phase '" + t[2] + "'", number, 3);
      const Lateral lat{own, other, *phase};
      auto e = model.find_edge(*model.index_of(own), *model.index_of(other));
      if (!e || !model.edges()[*e].phases.contains(*phase)) {
        throw FeederError("lateral " + to_string(lat) + " absent from the feeder", number, 1);
      }
      by_node[own].push_back(lat);
    } else {
      throw FeederError("unknown placement statement '" + t[0] + "'", number, 1);
    }
  }
  return finish_plan(std::move(by_node), model, capacity);
}

nlohmann::json to_json(const PlacementPlan& plan) {
  nlohmann::json j;
  j["capacity"] = plan.capacity;
  j["totals"] = {{"nodes", plan.totals.nodes},
                 {"laterals", plan.totals.laterals},
                 {"devices", plan.totals.devices}};
  j["entries"] = nlohmann::json::array();
  for (const PlanEntry& e : plan.entries) {
    nlohmann::json laterals = nlohmann::json::array();
    for (const Lateral& l : e.laterals) {
      laterals.push_back({{"own", {l.own_node, phase_number(l.phase)}},
                          {"other", {l.other_node, phase_number(l.phase)}}});
    }
    j["entries"].push_back({{"node", e.node_id}, {"devices", e.devices}, {"laterals", laterals}});
  }
  j["usm"] = nlohmann::json::array();
  for (const auto& [id, phases] : plan.usm) j["usm"].push_back({{"node", id}, {"phases", phases.to_string()}});
  return j;
}

}  // namespace upmu
