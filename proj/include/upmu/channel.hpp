#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "upmu/phase.hpp"

namespace upmu {

enum class ChannelEnd : std::uint8_t { low, high };

/// One measurement slot: a uPMU channel at one end of a phase edge, reading
/// the voltage of that end and the current along the edge.
struct Channel {
  PhaseId low;
  PhaseId high;
  ChannelEnd end = ChannelEnd::low;

  PhaseId host() const { return end == ChannelEnd::low ? low : high; }
  PhaseId remote() const { return end == ChannelEnd::low ? high : low; }

  auto operator<=>(const Channel&) const = default;
};

/// "(host)-(remote)" using node indices.
std::string to_string(const Channel& c);

}  // namespace upmu
