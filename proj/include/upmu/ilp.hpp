#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "upmu/channel.hpp"
#include "upmu/feeder.hpp"
#include "upmu/phase_graph.hpp"
#include "upmu/zip_model.hpp"

namespace upmu {

struct ChannelVar {
  Channel channel;
  EdgeKind kind = EdgeKind::normal;
};

enum class VarRole : std::uint8_t { node_active, channel, devices };

/// Variable vector X = [z_1..z_M, g_1..g_G, n_1..n_M]. Channel variables g
/// follow the canonical edge order, low end before high end.
class VariableCatalog {
 public:
  VariableCatalog(std::vector<int> node_ids, std::vector<ChannelVar> channels, int capacity);

  int node_count() const { return static_cast<int>(node_ids_.size()); }
  std::size_t channel_count() const { return channels_.size(); }
  std::size_t variable_count() const { return 2 * node_ids_.size() + channels_.size(); }
  int capacity() const { return capacity_; }

  std::size_t z(int node) const { return static_cast<std::size_t>(node - 1); }
  std::size_t g(std::size_t channel) const { return node_ids_.size() + channel; }
  std::size_t n(int node) const {
    return node_ids_.size() + channels_.size() + static_cast<std::size_t>(node - 1);
  }

  VarRole role(std::size_t var) const;
  std::span<const ChannelVar> channels() const { return channels_; }
  const ChannelVar& channel(std::size_t j) const { return channels_.at(j); }
  /// Node index (1..M) hosting channel j.
  int host_node(std::size_t j) const { return channels_.at(j).channel.host().node; }
  std::optional<std::size_t> find(const Channel& c) const;
  int declared_id(int node) const { return node_ids_.at(static_cast<std::size_t>(node - 1)); }

  /// z_<id>, n_<id>, g_l_<lowid>p<phase>_<highid> or g_h_<lowid>p<phase>_<highid>.
  std::string name(std::size_t var) const;
  std::optional<std::size_t> find_name(std::string_view name) const;

 private:
  std::vector<int> node_ids_;
  std::vector<ChannelVar> channels_;
  int capacity_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

enum class RowTag : std::uint8_t { coverage, object_pair, object_triplet, activation, channel };

std::string_view to_string(RowTag tag);

struct Term {
  std::size_t var = 0;
  int coef = 0;

  bool operator==(const Term&) const = default;
};

/// sum(coef * X[var]) >= rhs. Configuration-independent rows carry config 0.
struct Row {
  RowTag tag = RowTag::coverage;
  int config = 0;
  std::vector<Term> terms;
  int rhs = 0;
  std::string name;
};

struct IlpInstance {
  VariableCatalog catalog;
  std::vector<int> objective;
  std::vector<Row> rows;
  int config_count = 0;

  std::size_t count(RowTag tag) const;
  std::size_t count(RowTag tag, int config) const;
};

/// A phase (or object) that no channel variable can cover in some
/// configuration.
class StructuralInfeasibility : public std::runtime_error {
 public:
  StructuralInfeasibility(PhaseId phase, int config, const std::string& message);

  PhaseId phase() const { return phase_; }
  int config() const { return config_; }

 private:
  PhaseId phase_;
  int config_;
};

struct BuildOptions {
  int channel_capacity = 3;
  /// Keep the individual coverage row of phases that also appear in objects.
  bool strict_coverage = false;
};

/// Assembles the stacked instance. Per configuration: coverage rows for every
/// phase outside all objects (every phase with strict_coverage), then pair
/// and triplet rows. Activation and channel rows follow once.
IlpInstance build_constraints(const FeederModel& model, std::span<const PhaseGraph> graphs,
                              std::span<const ObjectSetR> objects, const BuildOptions& options);

/// Channel ordinals whose selection covers phase v in `graph` (end-local for
/// regulator and distributed-load edges).
std::vector<std::size_t> covering_channels(const VariableCatalog& catalog, const PhaseGraph& graph,
                                           PhaseId v);

}  // namespace upmu
