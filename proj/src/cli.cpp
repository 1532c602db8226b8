#include "upmu/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "upmu/feeder.hpp"
#include "upmu/lp_format.hpp"
#include "upmu/oracle.hpp"
#include "upmu/problem.hpp"
#include "upmu/report.hpp"
#include "upmu/solver.hpp"
#include "upmu/topology.hpp"

namespace upmu {

namespace {

// Input problems the user can fix by editing arguments or files.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string feeder_path;
  std::string placement_path;
  std::string configs_path;
  std::string seed_path;
  std::string sol_path;
  std::string plan_out;
  std::string json_out;
  std::string lp_out;
  int channels = 3;
  double time_limit = 300.0;
  int max_switches = 12;
  bool no_zip = false;
  bool strict_coverage = false;
  bool strict_islanding = false;
};

FeederModel read_feeder(const std::string& path) {
  try {
    return parse_feeder(read_text_file(path));
  } catch (const FeederError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

PlacementPlan read_plan(const std::string& path, const FeederModel& model, int capacity) {
  try {
    return parse_placement(read_text_file(path), model, capacity);
  } catch (const FeederError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

IslandingRule islanding(const RunConfig& rc) {
  return rc.strict_islanding ? IslandingRule::phase_connectivity : IslandingRule::node_connectivity;
}

std::vector<SwitchConfig> load_configs(const RunConfig& rc, const FeederModel& model) {
  if (rc.configs_path.empty()) {
    try {
      return enumerate_feasible_configs(model, {rc.max_switches, islanding(rc)});
    } catch (const TopologyError& e) {
      throw UsageError(e.what());
    }
  }
  std::vector<SwitchConfig> configs;
  try {
    configs = parse_config_list(read_text_file(rc.configs_path), model);
  } catch (const std::runtime_error& e) {
    throw UsageError(rc.configs_path + ": " + e.what());
  }
  for (const SwitchConfig& c : configs) {
    if (!is_feasible(model, c, islanding(rc))) {
      throw UsageError(rc.configs_path + ": configuration " + std::to_string(c.index()) + " (" +
                       c.to_string() + ") islands part of the feeder");
    }
  }
  if (configs.empty()) throw UsageError(rc.configs_path + ": no configurations listed");
  return configs;
}

PlacementProblem load_problem(const RunConfig& rc) {
  FeederModel model = read_feeder(rc.feeder_path);
  std::vector<SwitchConfig> configs = load_configs(rc, model);
  ProblemOptions options{rc.channels, !rc.no_zip, rc.strict_coverage};
  return assemble_problem(std::move(model), std::move(configs), options);
}

nlohmann::json solution_json(const Solution& s, const VariableCatalog& catalog) {
  nlohmann::json selected = nlohmann::json::array();
  for (std::size_t j = 0; j < s.channels.size(); ++j) {
    if (s.channels[j]) selected.push_back(catalog.name(catalog.g(j)));
  }
  return {{"objective", s.objective},
          {"components",
           {{"nodes", s.components.nodes},
            {"channels", s.components.channels},
            {"devices", s.components.devices}}},
          {"selected_channels", selected}};
}

void print_summary(std::ostream& out, const PlacementProblem& p) {
  out << "Feeder: " << p.model.node_count() << " nodes, " << p.model.phase_count() << " phases, "
      << p.configs.size() << " configuration(s), ZIP handling " << (p.options.zip_enabled ? "on" : "off")
      << ", K = " << p.options.channel_capacity << '\n';
}

int cmd_solve(const RunConfig& rc, std::ostream& out) {
  PlacementProblem p = load_problem(rc);
  SolveOptions options;
  options.time_limit_seconds = rc.time_limit;
  if (!rc.seed_path.empty()) {
    const PlacementPlan seed = read_plan(rc.seed_path, p.model, rc.channels);
    try {
      options.seed_channels = encode_channels(plan_channels(seed, p.model), p.instance.catalog);
    } catch (const std::exception& e) {
      throw UsageError(rc.seed_path + ": " + e.what());
    }
  }
  const SolveResult result = solve(p.instance, options);
  print_summary(out, p);
  out << "Status: " << to_string(result.status) << '\n';
  if (!rc.lp_out.empty()) write_file(rc.lp_out, export_lp(p.instance));
  if (!result.solution) {
    out << "No placement satisfies every configuration.\n";
    return result.status == SolveStatus::timed_out ? kExitTimeout : kExitInfeasible;
  }
  const Solution& s = *result.solution;
  const PlacementPlan plan = decode_solution(s, p.instance.catalog, p.model);
  out << "Objective: " << s.objective << " (lower bound " << result.lower_bound << ", gap "
      << result.gap() << ")\n\n";
  out << format_table(plan);
  if (!rc.plan_out.empty()) write_file(rc.plan_out, write_placement(plan));
  if (!rc.json_out.empty()) {
    nlohmann::json j;
    j["status"] = std::string(to_string(result.status));
    j["lower_bound"] = result.lower_bound;
    j["gap"] = result.gap();
    j["zip_enabled"] = p.options.zip_enabled;
    j["configurations"] = nlohmann::json::array();
    for (const SwitchConfig& c : p.configs) j["configurations"].push_back(c.to_string());
    j["solution"] = solution_json(s, p.instance.catalog);
    j["plan"] = to_json(plan);
    j["search"] = {{"nodes_explored", s.proof.nodes_explored},
                   {"root_bound", s.proof.root_bound},
                   {"greedy_objective", s.proof.greedy_objective},
                   {"incumbents", s.proof.incumbents},
                   {"tie_break_complete", s.proof.tie_break_complete}};
    write_file(rc.json_out, j.dump(2) + "\n");
  }
  return result.status == SolveStatus::timed_out ? kExitTimeout : kExitOk;
}

int cmd_verify(const RunConfig& rc, std::ostream& out) {
  const FeederModel model = read_feeder(rc.feeder_path);
  const std::vector<SwitchConfig> configs = load_configs(rc, model);
  const PlacementPlan plan = read_plan(rc.placement_path, model, rc.channels);
  const std::vector<Channel> channels = plan_channels(plan, model);
  const Verdict verdict = verify_placement(model, configs, channels, !rc.no_zip);
  nlohmann::json j;
  j["pass"] = verdict.pass;
  j["configurations"] = nlohmann::json::array();
  for (const ConfigVerdict& cv : verdict.configs) {
    out << "Configuration " << cv.config.index() << " (" << cv.config.to_string() << "): "
        << (cv.unobserved.empty() ? "PASS" : "FAIL");
    nlohmann::json unobserved = nlohmann::json::array();
    nlohmann::json inert = nlohmann::json::array();
    if (!cv.unobserved.empty()) {
      out << ", unobserved";
      for (PhaseId v : cv.unobserved) {
        const std::string name = "(" + std::to_string(model.declared_id(v.node)) + "," +
                                 std::to_string(phase_number(v.phase)) + ")";
        out << ' ' << name;
        unobserved.push_back(name);
      }
    }
    if (!cv.inert.empty()) out << ", " << cv.inert.size() << " channel(s) on open switches";
    for (const Channel& c : cv.inert) inert.push_back(to_string(c));
    out << '\n';
    j["configurations"].push_back({{"index", cv.config.index()},
                                   {"assignment", cv.config.to_string()},
                                   {"pass", cv.unobserved.empty()},
                                   {"unobserved", unobserved},
                                   {"inert_channels", inert}});
  }
  out << "Plan: " << plan.totals.nodes << " nodes, " << plan.totals.laterals << " laterals, "
      << plan.totals.devices << " uPMUs\n";
  out << (verdict.pass ? "PASS" : "FAIL") << '\n';
  if (!rc.json_out.empty()) write_file(rc.json_out, j.dump(2) + "\n");
  return verdict.pass ? kExitOk : kExitVerifyFail;
}

int cmd_export_lp(const RunConfig& rc, std::ostream& out) {
  const PlacementProblem p = load_problem(rc);
  const std::string lp = export_lp(p.instance);
  if (rc.lp_out.empty() || rc.lp_out == "-") {
    out << lp;
  } else {
    write_file(rc.lp_out, lp);
  }
  return kExitOk;
}

int cmd_enumerate(const RunConfig& rc, std::ostream& out) {
  const FeederModel model = read_feeder(rc.feeder_path);
  const std::vector<SwitchConfig> configs = load_configs(rc, model);
  for (const SwitchConfig& c : configs) out << c.index() << ": " << c.to_string() << '\n';
  out << configs.size() << " feasible configuration(s)\n";
  return kExitOk;
}

int cmd_report(const RunConfig& rc, std::ostream& out) {
  PlacementPlan plan;
  if (!rc.sol_path.empty()) {
    const PlacementProblem p = load_problem(rc);
    std::vector<std::uint8_t> bits;
    try {
      bits = read_solution_channels(read_text_file(rc.sol_path), p.instance.catalog);
    } catch (const std::runtime_error& e) {
      throw UsageError(rc.sol_path + ": " + e.what());
    }
    const Solution s = make_solution(p.instance.catalog, std::move(bits));
    const auto violated = violated_rows(p.instance, s);
    plan = decode_solution(s, p.instance.catalog, p.model);
    out << "Imported solution objective: " << s.objective << '\n';
    if (!violated.empty()) {
      out << "Imported solution violates " << violated.size() << " row(s), first " << violated.front() << '\n';
    }
  } else {
    if (rc.placement_path.empty()) throw UsageError("report needs a placement file or --sol");
    const FeederModel model = read_feeder(rc.feeder_path);
    plan = read_plan(rc.placement_path, model, rc.channels);
  }
  out << format_table(plan);
  if (!rc.plan_out.empty()) write_file(rc.plan_out, write_placement(plan));
  if (!rc.json_out.empty()) write_file(rc.json_out, to_json(plan).dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Phase-aware micro-PMU placement for unbalanced distribution feeders", "upmu"};
  app.require_subcommand(1);

  auto add_model_flags = [&rc](CLI::App* sub) {
    sub->add_flag("--no-zip", rc.no_zip, "Ignore zero-injection phases (USM phases still count)");
    sub->add_option("--channels,-K", rc.channels, "Channels per uPMU")->check(CLI::Range(1, 1 << 20));
    sub->add_option("--configs", rc.configs_path, "Explicit switch configuration list")
        ->check(CLI::ExistingFile);
    sub->add_flag("--strict-islanding", rc.strict_islanding,
                  "Require every phase label to stay connected");
    sub->add_option("--max-switches", rc.max_switches, "Switch count above which --configs is required")
        ->check(CLI::Range(0, 20));
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "Compute a minimum-cost placement");
  solve_cmd->add_option("feeder", rc.feeder_path, "Feeder file")->required()->check(CLI::ExistingFile);
  add_model_flags(solve_cmd);
  solve_cmd->add_flag("--strict-coverage", rc.strict_coverage,
                      "Keep coverage rows for phases that belong to observability objects");
  solve_cmd->add_option("--time-limit", rc.time_limit, "Search time limit in seconds")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed-incumbent", rc.seed_path, "Placement file used as a starting solution")
      ->check(CLI::ExistingFile);
  solve_cmd->add_option("--plan-out", rc.plan_out, "Write the placement file here");
  solve_cmd->add_option("--json-out", rc.json_out, "Write a JSON solution dump here");
  solve_cmd->add_option("--lp-out", rc.lp_out, "Also write the LP model here");

  CLI::App* verify_cmd = app.add_subcommand("verify", "Check a placement in every configuration");
  verify_cmd->add_option("feeder", rc.feeder_path, "Feeder file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("placement", rc.placement_path, "Placement file")->required()->check(CLI::ExistingFile);
  add_model_flags(verify_cmd);
  verify_cmd->add_option("--json-out", rc.json_out, "Write the per-configuration report as JSON");

  CLI::App* lp_cmd = app.add_subcommand("export-lp", "Write the integer program in LP format");
  lp_cmd->add_option("feeder", rc.feeder_path, "Feeder file")->required()->check(CLI::ExistingFile);
  add_model_flags(lp_cmd);
  lp_cmd->add_flag("--strict-coverage", rc.strict_coverage,
                   "Keep coverage rows for phases that belong to observability objects");
  lp_cmd->add_option("--output,-o", rc.lp_out, "Output path (default stdout)");

  CLI::App* enum_cmd = app.add_subcommand("enumerate-configs", "List feasible switch configurations");
  enum_cmd->add_option("feeder", rc.feeder_path, "Feeder file")->required()->check(CLI::ExistingFile);
  add_model_flags(enum_cmd);

  CLI::App* report_cmd = app.add_subcommand("report", "Pretty-print a placement");
  report_cmd->add_option("feeder", rc.feeder_path, "Feeder file")->required()->check(CLI::ExistingFile);
  report_cmd->add_option("placement", rc.placement_path, "Placement file")->check(CLI::ExistingFile);
  add_model_flags(report_cmd);
  report_cmd->add_flag("--strict-coverage", rc.strict_coverage,
                       "Keep coverage rows for phases that belong to observability objects");
  report_cmd->add_option("--sol", rc.sol_path, "External solver solution to import instead of a placement")
      ->check(CLI::ExistingFile);
  report_cmd->add_option("--plan-out", rc.plan_out, "Write the placement file here");
  report_cmd->add_option("--json-out", rc.json_out, "Write the plan as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(rc, out);
    if (verify_cmd->parsed()) return cmd_verify(rc, out);
    if (lp_cmd->parsed()) return cmd_export_lp(rc, out);
    if (enum_cmd->parsed()) return cmd_enumerate(rc, out);
    return cmd_report(rc, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FeederError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const StructuralInfeasibility& e) {
    out << "Status: infeasible\n";
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace upmu
