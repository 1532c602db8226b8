#include "upmu/phase.hpp"

namespace upmu {

char phase_letter(Phase p) {
  switch (p) {
    case Phase::A: return 'A';
    case Phase::B: return 'B';
    case Phase::C: return 'C';
  }
  return '?';
}

std::optional<Phase> parse_phase(char letter) {
  switch (letter) {
    case 'A': return Phase::A;
    case 'B': return Phase::B;
    case 'C': return Phase::C;
    default: return std::nullopt;
  }
}

std::optional<PhaseSet> PhaseSet::parse(std::string_view letters) {
  if (letters.empty()) return std::nullopt;
  PhaseSet set;
  for (char c : letters) {
    auto p = parse_phase(c);
    if (!p || set.contains(*p)) return std::nullopt;
    set.insert(*p);
  }
  return set;
}

std::vector<Phase> PhaseSet::members() const {
  std::vector<Phase> out;
  for (Phase p : kAllPhases) {
    if (contains(p)) out.push_back(p);
  }
  return out;
}

std::string PhaseSet::to_string() const {
  if (empty()) return "-";
  std::string s;
  for (Phase p : members()) s.push_back(phase_letter(p));
  return s;
}

std::string to_string(PhaseId id) {
  return "(" + std::to_string(id.node) + "," + std::to_string(phase_number(id.phase)) + ")";
}

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::normal: return "normal";
    case EdgeKind::regulator: return "regulator";
    case EdgeKind::distributed_load: return "distributed-load";
  }
  return "?";
}

}  // namespace upmu
