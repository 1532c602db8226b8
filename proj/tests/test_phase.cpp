#include "doctest.h"

#include "upmu/phase.hpp"

using namespace upmu;

TEST_SUITE("phase") {
  TEST_CASE("phase letters round trip") {
    for (Phase p : kAllPhases) CHECK(parse_phase(phase_letter(p)) == p);
    CHECK_FALSE(parse_phase('D').has_value());
    CHECK(phase_number(Phase::C) == 3);
  }

  TEST_CASE("phase set parsing") {
    CHECK(PhaseSet::parse("ABC") == PhaseSet::all());
    CHECK(PhaseSet::parse("CA")->to_string() == "AC");
    CHECK_FALSE(PhaseSet::parse("").has_value());
    CHECK_FALSE(PhaseSet::parse("AA").has_value());
    CHECK_FALSE(PhaseSet::parse("AX").has_value());
  }

  TEST_CASE("phase set algebra matches bitwise reference") {
    for (int a = 0; a < 8; ++a) {
      for (int b = 0; b < 8; ++b) {
        PhaseSet sa, sb;
        for (Phase p : kAllPhases) {
          if (a >> (phase_number(p) - 1) & 1) sa.insert(p);
          if (b >> (phase_number(p) - 1) & 1) sb.insert(p);
        }
        for (Phase p : kAllPhases) {
          const int bit = 1 << (phase_number(p) - 1);
          CHECK((sa | sb).contains(p) == (((a | b) & bit) != 0));
          CHECK((sa & sb).contains(p) == (((a & b) & bit) != 0));
          CHECK((sa - sb).contains(p) == (((a & ~b) & bit) != 0));
        }
        CHECK(sa.is_subset_of(sb) == ((a & ~b) == 0));
        CHECK(sa.size() == __builtin_popcount(static_cast<unsigned>(a)));
        CHECK(sa.empty() == (a == 0));
      }
    }
    CHECK(PhaseSet().to_string() == "-");
  }

  TEST_CASE("phase ids order by node then phase") {
    CHECK(PhaseId{1, Phase::C} < PhaseId{2, Phase::A});
    CHECK(PhaseId{2, Phase::A} < PhaseId{2, Phase::B});
    CHECK(to_string(PhaseId{9, Phase::B}) == "(9,2)");
    CHECK(to_string(EdgeKind::distributed_load) == "distributed-load");
  }
}
