// Acceptance suite: one line per criterion, nonzero exit when a gating
// criterion fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "oracles.hpp"
#include "random_feeder.hpp"
#include "upmu/oracle.hpp"
#include "upmu/problem.hpp"
#include "upmu/report.hpp"
#include "upmu/solver.hpp"
#include "upmu/topology.hpp"

using namespace upmu;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

fs::path data(const char* name) { return fs::path(UPMU_DATA_DIR) / name; }

std::string components(const ObjectiveComponents& c) {
  return "(" + std::to_string(c.nodes) + " nodes, " + std::to_string(c.channels) + " channels, " +
         std::to_string(c.devices) + " devices)";
}

std::string channel_list(const FeederModel& m, const std::vector<Channel>& channels) {
  std::string s;
  for (const Channel& c : channels) {
    s += "  (" + std::to_string(m.declared_id(c.host().node)) + "," + std::to_string(phase_number(c.host().phase)) +
         ")-(" + std::to_string(m.declared_id(c.remote().node)) + "," + std::to_string(phase_number(c.remote().phase)) +
         ")\n";
  }
  return s;
}

// The corpus for the oracle, consistency, monotonicity and trade-off checks.
std::vector<testing::RandomFeeder> corpus(int count) {
  std::vector<testing::RandomFeeder> out;
  for (std::uint64_t seed = 1; static_cast<int>(out.size()) < count; ++seed) {
    out.push_back(testing::random_feeder(seed * 7919, {}));
  }
  return out;
}

SolveResult solve_feeder(const FeederModel& m, const std::vector<SwitchConfig>& configs, bool zip, int k = 3,
                         ObjectiveWeights w = {}) {
  const PlacementProblem p = assemble_problem(m, configs, {k, zip, false});
  return solve(p.instance, {300.0, w, std::nullopt});
}

Outcome criterion_ieee13() {
  const auto start = Clock::now();
  const FeederModel m = load_feeder(data("ieee13.feeder"));
  const auto configs = enumerate_feasible_configs(m);
  const auto nozip = solve_feeder(m, configs, false);
  const auto zip = solve_feeder(m, configs, true);
  const double t = seconds_since(start);
  const bool ok = nozip.status == SolveStatus::optimal && zip.status == SolveStatus::optimal &&
                  nozip.solution->components.nodes == 5 && nozip.solution->components.devices == 7 &&
                  zip.solution->components.nodes == 4 && zip.solution->components.devices == 6 && t < 5.0;
  std::ostringstream d;
  d << "no-zip " << (nozip.solution ? components(nozip.solution->components) : "none") << ", zip "
    << (zip.solution ? components(zip.solution->components) : "none") << ", " << t << " s";
  return {ok, d.str()};
}

Outcome criterion_published_plans() {
  const auto start = Clock::now();
  const FeederModel m = load_feeder(data("ieee13.feeder"));
  const auto configs = enumerate_feasible_configs(m);
  bool ok = true;
  int deletions = 0;
  for (auto [file, zip] : {std::pair{"ieee13_no_zip.placement", false}, std::pair{"ieee13_zip.placement", true}}) {
    const auto channels = plan_channels(parse_placement(read_text_file(data(file)), m, 3), m);
    ok = ok && verify_placement(m, configs, channels, zip).pass;
    for (std::size_t k = 0; k < channels.size(); ++k) {
      auto fewer = channels;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(k));
      ok = ok && !verify_placement(m, configs, fewer, zip).pass;
      ++deletions;
    }
  }
  const double t = seconds_since(start);
  std::ostringstream d;
  d << "both plans PASS, all " << deletions << " single deletions FAIL, " << t << " s";
  return {ok && t < 1.0, ok ? d.str() : "a published plan or a deletion check disagreed"};
}

struct Comparison {
  int solves = 0;
  int disabled_discrepancies = 0;
  int enabled_discrepancies = 0;
  int unverified = 0;
};

// Solver optimum against the exhaustive propagation optimum in both ZIP
// modes. Every disagreement is written out with the instance and both plans.
Comparison compare_with_brute_force(const std::vector<testing::RandomFeeder>& feeders, const fs::path& dir) {
  fs::create_directories(dir);
  Comparison out;
  std::ofstream index(dir / "discrepancies.txt");
  for (const auto& f : feeders) {
    const auto configs = enumerate_feasible_configs(f.model);
    for (bool zip : {false, true}) {
      const PlacementProblem p = assemble_problem(f.model, configs, {3, zip, false});
      const auto r = solve(p.instance);
      const auto brute = brute_force_optimum(f.model, configs, p.instance.catalog, zip);
      ++out.solves;
      bool passes = false;
      std::vector<Channel> chosen;
      if (r.solution) {
        chosen = testing::selected_channels(p.instance.catalog, r.solution->channels);
        passes = verify_placement(f.model, configs, chosen, zip).pass;
      }
      if (!passes) ++out.unverified;
      const bool agree = r.solution && brute && r.status == SolveStatus::optimal &&
                         r.solution->objective == brute->objective;
      if (agree && passes) continue;
      (zip ? out.enabled_discrepancies : out.disabled_discrepancies) += 1;
      const std::string name = "discrepancy_seed" + std::to_string(f.seed) + (zip ? "_zip" : "_nozip") + ".txt";
      std::ofstream a(dir / name);
      a << f.text << "\n# zip handling " << (zip ? "on" : "off") << "\n# ILP optimum "
        << (r.solution ? components(r.solution->components) : "none") << "\n"
        << channel_list(f.model, chosen) << "# propagation optimum "
        << (brute ? components(brute->components) : "none") << "\n"
        << (brute ? channel_list(f.model, testing::selected_channels(p.instance.catalog, brute->channels)) : "");
      index << name << '\n';
    }
  }
  return out;
}

Outcome criterion_oracle(const std::vector<testing::RandomFeeder>& feeders, const fs::path& artifacts) {
  const auto start = Clock::now();
  const Comparison main = compare_with_brute_force(feeders, artifacts / "oracle");
  const double t = seconds_since(start);
  // Supplementary, not gating: more zero-injection phases per feeder, which
  // exercises chained inference that the object rows cannot express.
  std::vector<testing::RandomFeeder> zip_rich;
  for (std::uint64_t seed = 1; zip_rich.size() < 300; ++seed) {
    zip_rich.push_back(testing::random_feeder(seed * 31337, {.max_zip_phases = 5}));
  }
  const Comparison extra = compare_with_brute_force(zip_rich, artifacts / "oracle_zip_rich");
  std::ostringstream d;
  d << feeders.size() << " feeders, " << main.solves << " solves, discrepancies: zip-disabled "
    << main.disabled_discrepancies << ", zip-enabled " << main.enabled_discrepancies
    << ", unverified optima " << main.unverified << ", " << t << " s; zip-rich supplement (300 feeders, up to 5 ZIP phases): "
    << extra.enabled_discrepancies << " zip-enabled discrepancies (ILP stricter than propagation), "
    << extra.disabled_discrepancies << " zip-disabled, " << extra.unverified << " unverified; artifacts under "
    << artifacts.string();
  return {feeders.size() >= 100 && main.disabled_discrepancies == 0 && main.unverified == 0 &&
              extra.disabled_discrepancies == 0 && extra.unverified == 0 && t < 120.0,
          d.str()};
}

Outcome criterion_consistency(const std::vector<testing::RandomFeeder>& feeders) {
  int checked = 0;
  bool ok = true;
  for (const auto& f : feeders) {
    const auto configs = enumerate_feasible_configs(f.model);
    for (int k : {1, 2, 3}) {
      const PlacementProblem p = assemble_problem(f.model, configs, {k, true, false});
      const auto r = solve(p.instance);
      if (!r.solution) {
        ok = false;
        continue;
      }
      const VariableCatalog& cat = p.instance.catalog;
      const auto x = variable_values(cat, *r.solution);
      std::vector<int> per_node(static_cast<std::size_t>(cat.node_count()), 0);
      int g_sum = 0, n_sum = 0;
      for (std::size_t j = 0; j < cat.channel_count(); ++j) {
        if (x[cat.g(j)]) ++per_node[static_cast<std::size_t>(cat.host_node(j) - 1)];
        g_sum += x[cat.g(j)];
      }
      for (int i = 1; i <= cat.node_count(); ++i) {
        const int c = per_node[static_cast<std::size_t>(i - 1)];
        ok = ok && x[cat.n(i)] == (c + k - 1) / k && x[cat.z(i)] == (c > 0 ? 1 : 0);
        n_sum += x[cat.n(i)];
      }
      if (k == 1) ok = ok && n_sum == g_sum;
      ok = ok && violated_rows(p.instance, *r.solution).empty();
      ++checked;
    }
  }
  return {ok, std::to_string(checked) + " solutions checked for K = 1, 2, 3"};
}

Outcome criterion_multi_topology(const fs::path& artifacts) {
  int instances = 0, per_config_failures = 0, stacking_needed = 0, infeasible = 0;
  std::ofstream witness(artifacts / "stacking_witness.txt");
  for (std::uint64_t seed = 1; instances < 100; ++seed) {
    const int switches = 1 + static_cast<int>(seed % 3);
    const auto f = testing::random_feeder(seed * 104729, {.switches = switches});
    const auto configs = enumerate_feasible_configs(f.model);
    if (configs.size() < 2) continue;
    std::optional<PlacementProblem> p;
    try {
      p = assemble_problem(f.model, configs, {});
    } catch (const StructuralInfeasibility&) {
      ++infeasible;
      continue;
    }
    const auto r = solve(p->instance);
    if (!r.solution) {
      ++infeasible;
      continue;
    }
    ++instances;
    const auto chosen = testing::selected_channels(p->instance.catalog, r.solution->channels);
    for (const SwitchConfig& c : configs) {
      if (!verify_placement(f.model, std::vector<SwitchConfig>{c}, chosen, true).pass) ++per_config_failures;
    }
    const std::vector<SwitchConfig> first{configs.front()};
    const PlacementProblem single = assemble_problem(f.model, first, {});
    const auto rs = solve(single.instance);
    if (!rs.solution) continue;
    const auto single_plan = testing::selected_channels(single.instance.catalog, rs.solution->channels);
    bool fails_elsewhere = false;
    for (std::size_t t = 1; t < configs.size(); ++t) {
      if (!verify_placement(f.model, std::vector<SwitchConfig>{configs[t]}, single_plan, true).pass) {
        fails_elsewhere = true;
      }
    }
    if (fails_elsewhere) {
      if (stacking_needed == 0) {
        witness << f.text << "\n# plan from configuration 1 only\n" << channel_list(f.model, single_plan);
      }
      ++stacking_needed;
    }
  }
  std::ostringstream d;
  d << instances << " switched feeders, per-configuration failures " << per_config_failures
    << ", single-configuration plans failing elsewhere " << stacking_needed << " (" << infeasible
    << " structurally infeasible draws skipped)";
  return {per_config_failures == 0 && stacking_needed >= 1, d.str()};
}

Outcome criterion_monotonicity(const std::vector<testing::RandomFeeder>& feeders) {
  bool ok = true;
  for (const auto& f : feeders) {
    const auto configs = enumerate_feasible_configs(f.model);
    const auto on = solve_feeder(f.model, configs, true);
    const auto off = solve_feeder(f.model, configs, false);
    ok = ok && on.solution && off.solution && on.solution->objective <= off.solution->objective;
  }
  const FeederModel m = load_feeder(data("ieee13.feeder"));
  const auto configs = enumerate_feasible_configs(m);
  const int off = solve_feeder(m, configs, false).solution->components.devices;
  const int on = solve_feeder(m, configs, true).solution->components.devices;
  ok = ok && off == 7 && on == 6;
  return {ok, std::to_string(feeders.size()) + " feeders zip <= no-zip, ieee13 devices " + std::to_string(off) +
                  " -> " + std::to_string(on)};
}

Outcome criterion_tradeoff(const std::vector<testing::RandomFeeder>& feeders) {
  const ObjectiveWeights combined{1, 1, 1}, case_a{1, 1, 0}, case_b{0, 1, 1};
  bool ok = true;
  int equal_nodes = 0, more_devices = 0, equal_devices = 0, more_nodes = 0;
  for (const auto& f : feeders) {
    const auto configs = enumerate_feasible_configs(f.model);
    const auto c = solve_feeder(f.model, configs, true, 3, combined).solution->components;
    const auto a = solve_feeder(f.model, configs, true, 3, case_a).solution->components;
    const auto b = solve_feeder(f.model, configs, true, 3, case_b).solution->components;
    if (a.nodes == c.nodes) {
      ++equal_nodes;
      ok = ok && a.devices >= c.devices;
      more_devices += a.devices > c.devices;
    }
    if (b.devices == c.devices) {
      ++equal_devices;
      ok = ok && b.nodes >= c.nodes;
      more_nodes += b.nodes > c.nodes;
    }
    ok = ok && c.total() <= a.total() && c.total() <= b.total();
  }
  std::ostringstream d;
  d << "nodes-focused: " << equal_nodes << " ties on nodes, " << more_devices
    << " with more devices; devices-focused: " << equal_devices << " ties on devices, " << more_nodes
    << " with more nodes; combined never worse in total";
  return {ok, d.str()};
}

Outcome criterion_larger_feeders() {
  struct Target {
    const char* file;
    ObjectiveComponents nozip, zip;
  };
  // Counts are (nodes, -, devices); channels are not compared.
  const std::vector<Target> targets{{"ieee34.feeder", {22, 0, 25}, {21, 0, 22}},
                                    {"ieee37.feeder", {14, 0, 19}, {13, 0, 15}},
                                    {"ieee123.feeder", {51, 0, 54}, {41, 0, 43}}};
  std::ostringstream d;
  bool all = true;
  int attempted = 0;
  for (const Target& t : targets) {
    if (!fs::exists(data(t.file))) {
      d << t.file << " not bundled; ";
      all = false;
      continue;
    }
    ++attempted;
    const FeederModel m = load_feeder(data(t.file));
    const auto configs = enumerate_feasible_configs(m);
    for (bool zip : {false, true}) {
      const PlacementProblem p = assemble_problem(m, configs, {3, zip, false});
      const auto r = solve(p.instance, {60.0, {}, std::nullopt});
      const ObjectiveComponents& want = zip ? t.zip : t.nozip;
      d << t.file << (zip ? " zip " : " no-zip ") << to_string(r.status);
      if (r.solution) {
        d << " (" << r.solution->components.nodes << ", " << r.solution->components.devices << ") want ("
          << want.nodes << ", " << want.devices << ")";
        all = all && r.status == SolveStatus::optimal && r.solution->components.nodes == want.nodes &&
              r.solution->components.devices == want.devices;
      } else {
        all = false;
      }
      d << "; ";
    }
  }
  if (attempted == 0) all = false;
  return {all, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uPMU placement acceptance suite"};
  std::string artifacts_dir = "acceptance_artifacts";
  app.add_option("--artifacts", artifacts_dir, "Directory for discrepancy artifacts");
  CLI11_PARSE(app, argc, argv);
  const fs::path artifacts(artifacts_dir);
  fs::create_directories(artifacts);

  const auto feeders = corpus(120);
  struct Line {
    int number;
    const char* title;
    bool gating;
    Outcome outcome;
  };
  std::vector<Line> lines;
  auto run = [&](int number, const char* title, bool gating, auto&& fn) {
    Line line{number, title, gating, {}};
    try {
      line.outcome = fn();
    } catch (const std::exception& e) {
      line.outcome = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (line.outcome.pass ? "PASS" : (gating ? "FAIL" : "MISS")) << "  criterion " << number << " ["
              << title << (gating ? "" : ", stretch") << "]: " << line.outcome.detail << std::endl;
    lines.push_back(std::move(line));
  };

  run(1, "ieee13 reproduction", true, criterion_ieee13);
  run(2, "published plan verification", true, criterion_published_plans);
  run(3, "oracle equivalence", true, [&] { return criterion_oracle(feeders, artifacts); });
  run(4, "channel/device consistency", true, [&] { return criterion_consistency(feeders); });
  run(5, "multi-topology soundness", true, [&] { return criterion_multi_topology(artifacts); });
  run(6, "zip monotonicity", true, [&] { return criterion_monotonicity(feeders); });
  run(7, "objective trade-off", true, [&] { return criterion_tradeoff(feeders); });
  run(8, "larger feeders", false, criterion_larger_feeders);

  int failed = 0;
  for (const Line& l : lines) failed += l.gating && !l.outcome.pass;
  std::cout << (failed == 0 ? "all gating criteria pass" : std::to_string(failed) + " gating criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
