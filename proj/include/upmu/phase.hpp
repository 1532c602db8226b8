#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace upmu {

/// Phase label. The numeric value is the label used in reports (A=1, B=2, C=3).
enum class Phase : std::uint8_t { A = 1, B = 2, C = 3 };

inline constexpr std::array<Phase, 3> kAllPhases{Phase::A, Phase::B, Phase::C};

constexpr int phase_number(Phase p) { return static_cast<int>(p); }
char phase_letter(Phase p);
std::optional<Phase> parse_phase(char letter);

/// Subset of {A, B, C}.
class PhaseSet {
 public:
  constexpr PhaseSet() = default;
  constexpr explicit PhaseSet(Phase p) : bits_(bit(p)) {}

  /// Parses a string such as "ABC", "BC" or "A". Letters may appear in any
  /// order but not twice; the empty string is rejected.
  static std::optional<PhaseSet> parse(std::string_view letters);
  static constexpr PhaseSet all() { return PhaseSet(0b111); }

  constexpr bool contains(Phase p) const { return (bits_ & bit(p)) != 0; }
  constexpr void insert(Phase p) { bits_ |= bit(p); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const {
    return (bits_ & 1) + ((bits_ >> 1) & 1) + ((bits_ >> 2) & 1);
  }
  constexpr bool is_subset_of(PhaseSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  constexpr PhaseSet operator|(PhaseSet o) const { return PhaseSet(bits_ | o.bits_); }
  constexpr PhaseSet operator&(PhaseSet o) const { return PhaseSet(bits_ & o.bits_); }
  constexpr PhaseSet operator-(PhaseSet o) const {
    return PhaseSet(bits_ & ~o.bits_);
  }
  constexpr bool operator==(const PhaseSet&) const = default;

  std::vector<Phase> members() const;
  /// "ABC" style rendering; "-" for the empty set.
  std::string to_string() const;

 private:
  constexpr explicit PhaseSet(int bits) : bits_(static_cast<std::uint8_t>(bits)) {}
  static constexpr std::uint8_t bit(Phase p) {
    return static_cast<std::uint8_t>(1u << (phase_number(p) - 1));
  }

  std::uint8_t bits_ = 0;
};

/// A phase vertex (x, y): node index x in 1..M (declaration order) and phase y.
/// Ordered by node first, then phase.
struct PhaseId {
  int node = 0;
  Phase phase = Phase::A;

  auto operator<=>(const PhaseId&) const = default;
};

/// "(x,y)" with the node index and phase number.
std::string to_string(PhaseId id);

enum class EdgeKind : std::uint8_t { normal, regulator, distributed_load };

std::string_view to_string(EdgeKind kind);

}  // namespace upmu
