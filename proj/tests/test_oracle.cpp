#include "doctest.h"

#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "random_feeder.hpp"
#include "upmu/oracle.hpp"
#include "upmu/problem.hpp"
#include "upmu/report.hpp"
#include "upmu/topology.hpp"

using namespace upmu;

namespace {

std::filesystem::path data(const char* name) { return std::filesystem::path(UPMU_DATA_DIR) / name; }

std::vector<Channel> plan_file_channels(const FeederModel& m, const char* name) {
  return plan_channels(parse_placement(read_text_file(data(name)), m, 3), m);
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("published plans pass and every single deletion fails") {
    const FeederModel m = load_feeder(data("ieee13.feeder"));
    const auto configs = enumerate_feasible_configs(m);
    for (auto [file, zip] : {std::pair{"ieee13_no_zip.placement", false}, std::pair{"ieee13_zip.placement", true}}) {
      const auto channels = plan_file_channels(m, file);
      CHECK(verify_placement(m, configs, channels, zip).pass);
      for (std::size_t k = 0; k < channels.size(); ++k) {
        auto fewer = channels;
        fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(k));
        CHECK_MESSAGE(!verify_placement(m, configs, fewer, zip).pass, file << " without " << to_string(channels[k]));
      }
    }
  }

  TEST_CASE("table 1 plan needs usm inference at node 6") {
    const FeederModel m = load_feeder(data("ieee13.feeder"));
    const auto channels = plan_file_channels(m, "ieee13_no_zip.placement");
    const PhaseGraph g = build_phase_graph(m, SwitchConfig::all_closed(m));
    const ObservedSet seen = propagate_observability(g, channels, known_injection_phases(m, false));
    CHECK(seen.observed.size() == 32);
    bool inferred_6c = false;
    for (const Derivation& d : seen.log) {
      if (d.phase == PhaseId{6, Phase::C}) inferred_6c = d.rule != InferenceRule::direct;
    }
    CHECK(inferred_6c);
  }

  TEST_CASE("channels on regulator and distributed-load edges see their own end only") {
    const FeederModel m = parse_feeder("node 1 phases AB\nnode 2 phases AB\nedge 1 2 phases AB regulator A distload B\n");
    const PhaseGraph g = build_phase_graph(m, SwitchConfig::all_closed(m));
    const std::vector<Channel> channels{{{1, Phase::A}, {2, Phase::A}, ChannelEnd::low},
                                        {{1, Phase::B}, {2, Phase::B}, ChannelEnd::high}};
    const ObservedSet seen = propagate_observability(g, channels, {});
    CHECK(seen.observed == std::vector<PhaseId>{{1, Phase::A}, {2, Phase::B}});
    CHECK(seen.log[0].rule == InferenceRule::own_end);
  }

  TEST_CASE("propagation matches the reference fixpoint on random plans") {
    std::mt19937_64 rng(3);
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      const auto f = testing::random_feeder(seed, {.max_zip_phases = 4,
                                                   .switches = static_cast<int>(seed % 3),
                                                   .usm_phases = static_cast<int>(seed % 2)});
      const auto configs = enumerate_feasible_configs(f.model);
      std::optional<PlacementProblem> p;
      try {
        p = assemble_problem(f.model, configs, {});
      } catch (const StructuralInfeasibility&) {
        continue;
      }
      const VariableCatalog& cat = p->instance.catalog;
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::uint8_t> bits(cat.channel_count());
        for (auto& b : bits) b = std::uniform_int_distribution<int>(0, 2)(rng) == 0;
        const auto channels = testing::selected_channels(cat, bits);
        for (bool zip : {true, false}) {
          const Verdict v = verify_placement(f.model, configs, channels, zip);
          bool all = true;
          for (std::size_t t = 0; t < configs.size(); ++t) {
            const auto want = testing::reference_observed(f.model, configs[t], channels, zip);
            const PhaseGraph g = build_phase_graph(f.model, configs[t]);
            const ObservedSet got = propagate_observability(g, channels, known_injection_phases(f.model, zip));
            CHECK_MESSAGE(std::set<PhaseId>(got.observed.begin(), got.observed.end()) == want, f.text);
            CHECK(v.configs[t].unobserved.size() + want.size() == f.model.phases().size());
            all = all && want.size() == f.model.phases().size();
            // Idempotence: seeding with the full plan twice changes nothing.
            auto doubled = channels;
            doubled.insert(doubled.end(), channels.begin(), channels.end());
            CHECK(propagate_observability(g, doubled, known_injection_phases(f.model, zip)).observed == got.observed);
          }
          CHECK(v.pass == all);
        }
        // Adding a channel never loses observed phases.
        if (!channels.empty()) {
          auto fewer = channels;
          fewer.pop_back();
          const PhaseGraph g = build_phase_graph(f.model, configs[0]);
          const auto small = propagate_observability(g, fewer, known_injection_phases(f.model));
          const auto big = propagate_observability(g, channels, known_injection_phases(f.model));
          for (PhaseId v2 : small.observed) CHECK(big.contains(v2));
        }
      }
    }
  }

  TEST_CASE("every plan meeting the rows passes propagation") {
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
      const auto f = testing::random_feeder(seed, {.max_zip_phases = 3, .switches = static_cast<int>(seed % 3)});
      const auto configs = enumerate_feasible_configs(f.model);
      for (bool zip : {true, false}) {
        std::optional<PlacementProblem> p;
        try {
          p = assemble_problem(f.model, configs, {3, zip, false});
        } catch (const StructuralInfeasibility&) {
          continue;
        }
        for (int trial = 0; trial < 30; ++trial) {
          std::vector<std::uint8_t> bits(p->instance.catalog.channel_count());
          for (auto& b : bits) b = std::uniform_int_distribution<int>(0, 1)(rng);
          if (!testing::reference_rows_hold(f.model, configs, p->instance.catalog, bits, zip, false)) continue;
          CHECK_MESSAGE(verify_placement(f.model, configs, testing::selected_channels(p->instance.catalog, bits), zip).pass,
                        f.text);
        }
      }
    }
  }

  TEST_CASE("brute force on a three-node path") {
    // 1 - 2 - 3 with node 2 zero-injection: any single channel observes two
    // phases directly and the balance at node 2 gives the third.
    const FeederModel m = parse_feeder("node 1 phases A\nnode 2 phases A zip A\nnode 3 phases A\n"
                                       "edge 1 2 phases A\nedge 2 3 phases A\n");
    const auto configs = enumerate_feasible_configs(m);
    const auto p = assemble_problem(m, configs, {});
    const auto best = brute_force_optimum(m, configs, p.instance.catalog, true);
    REQUIRE(best);
    CHECK(best->objective == 3);
    CHECK(best->components == ObjectiveComponents{1, 1, 1});
    CHECK_THROWS_AS(brute_force_optimum(m, configs, p.instance.catalog, true, {}, 2), BruteForceCapExceeded);
  }

  TEST_CASE("brute force reports no plan for an isolated phase") {
    const FeederModel m = parse_feeder("node 1 phases AB\nnode 2 phases A\nedge 1 2 phases A\n");
    const auto configs = enumerate_feasible_configs(m);
    const VariableCatalog cat({1, 2}, {{{{1, Phase::A}, {2, Phase::A}, ChannelEnd::low}, EdgeKind::normal},
                                       {{{1, Phase::A}, {2, Phase::A}, ChannelEnd::high}, EdgeKind::normal}}, 3);
    CHECK_FALSE(brute_force_optimum(m, configs, cat, true).has_value());
  }
}
