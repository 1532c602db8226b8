#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "upmu/phase.hpp"

namespace upmu {

/// Error raised while reading or validating a feeder description. Line and
/// column are 1-based; both are 0 for errors not tied to a source position.
class FeederError : public std::runtime_error {
 public:
  FeederError(const std::string& message, int line = 0, int column = 0);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

struct FeederNode {
  int id = 0;  // declared id
  PhaseSet phases;
  PhaseSet load;  // phases with a nonzero spot injection
  PhaseSet zip;   // zero-injection phases
  PhaseSet usm;   // phases whose injections an unbundled smart meter reports
};

struct PhaseAttributes {
  EdgeKind kind = EdgeKind::normal;
  std::optional<int> switch_id;
};

/// Node-level edge. Endpoints are node indices (1..M) with low < high.
struct FeederEdge {
  int low = 0;
  int high = 0;
  PhaseSet phases;
  std::array<PhaseAttributes, 3> attributes{};

  const PhaseAttributes& at(Phase p) const { return attributes[phase_number(p) - 1]; }
  PhaseAttributes& at(Phase p) { return attributes[phase_number(p) - 1]; }
  bool is_switched() const;
};

/// Validated node-level feeder graph G(V, E). Node indices are 1-based and
/// follow declaration order; edges are kept sorted by (low, high).
class FeederModel {
 public:
  /// Validates every node and edge invariant; throws FeederError.
  FeederModel(std::vector<FeederNode> nodes, std::vector<FeederEdge> edges);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const FeederNode& node(int index) const { return nodes_.at(static_cast<std::size_t>(index - 1)); }
  std::span<const FeederNode> nodes() const { return nodes_; }
  std::span<const FeederEdge> edges() const { return edges_; }

  std::optional<int> index_of(int declared_id) const;
  int declared_id(int index) const { return node(index).id; }

  /// |V'|: total number of phases over all nodes.
  int phase_count() const;
  /// All phase vertices in canonical (node, phase) order.
  std::vector<PhaseId> phases() const;
  /// Distinct switch ids, ascending.
  const std::vector<int>& switch_ids() const { return switch_ids_; }

  /// Index into edges() of the edge joining two node indices, if any.
  std::optional<std::size_t> find_edge(int a, int b) const;

 private:
  std::vector<FeederNode> nodes_;
  std::vector<FeederEdge> edges_;
  std::vector<int> switch_ids_;
  std::map<int, int> index_by_id_;
};

FeederModel parse_feeder(std::string_view text);
FeederModel load_feeder(const std::filesystem::path& path);

/// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace upmu
