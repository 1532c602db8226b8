#include "doctest.h"

#include <filesystem>

#include "oracles.hpp"
#include "random_feeder.hpp"
#include "upmu/phase_graph.hpp"
#include "upmu/topology.hpp"

using namespace upmu;

TEST_SUITE("phase_graph") {
  TEST_CASE("four-node example counts") {
    const FeederModel m = load_feeder(std::filesystem::path(UPMU_DATA_DIR) / "fig1.feeder");
    const auto configs = enumerate_feasible_configs(m);
    REQUIRE(configs.size() == 2);
    const PhaseGraph closed = build_phase_graph(m, configs[0]);
    const PhaseGraph open = build_phase_graph(m, configs[1]);
    CHECK(closed.phases().size() == 11);
    CHECK(closed.edges().size() == 8);
    CHECK(open.phases().size() == 11);
    CHECK(open.edges().size() == 7);
    const auto e = closed.edge_index({1, Phase::A}, {2, Phase::A});
    REQUIRE(e.has_value());
    CHECK(closed.edges()[*e].kind == EdgeKind::distributed_load);
    CHECK(closed.edges()[*closed.edge_index({1, Phase::B}, {2, Phase::B})].kind == EdgeKind::regulator);
    CHECK_FALSE(open.edge_index({1, Phase::C}, {2, Phase::C}).has_value());
  }

  TEST_CASE("ieee13 has 29 phase laterals") {
    const FeederModel m = load_feeder(std::filesystem::path(UPMU_DATA_DIR) / "ieee13.feeder");
    const PhaseGraph g = build_phase_graph(m, SwitchConfig::all_closed(m));
    CHECK(g.phases().size() == 32);
    CHECK(g.edges().size() == 29);
    CHECK(g.neighborhood({12, Phase::A}) ==
          std::vector<PhaseId>{{8, Phase::A}, {9, Phase::A}, {12, Phase::A}});
  }

  TEST_CASE("incomplete configuration is rejected") {
    const FeederModel m = load_feeder(std::filesystem::path(UPMU_DATA_DIR) / "ieee13.feeder");
    CHECK_THROWS_AS(build_phase_graph(m, SwitchConfig(1, {})), std::invalid_argument);
  }

  TEST_CASE("graph matches the reference expansion on random feeders") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
      const auto f = testing::random_feeder(seed, {.switches = static_cast<int>(seed % 4)});
      for (const SwitchConfig& c : enumerate_feasible_configs(f.model)) {
        const PhaseGraph g = build_phase_graph(f.model, c);
        CHECK(std::vector<PhaseId>(g.phases().begin(), g.phases().end()) == f.model.phases());
        const auto ref = testing::reference_phase_edges(f.model, c);
        REQUIRE(g.edges().size() == ref.size());
        for (const auto& r : ref) {
          const auto e = g.edge_index(r.a, r.b);
          REQUIRE(e.has_value());
          CHECK(g.edges()[*e].kind == r.kind);
        }
        for (PhaseId v : g.phases()) {
          const auto want = testing::reference_neighborhood(f.model, c, v);
          CHECK(g.neighborhood(v) == std::vector<PhaseId>(want.begin(), want.end()));
          CHECK(g.incident(*g.phase_index(v)).size() + 1 == want.size());
        }
      }
    }
  }
}
