#pragma once

#include <string>
#include <utility>
#include <vector>

namespace upmu {

class FeederModel;

enum class SwitchState : unsigned char { closed, open };

/// Total open/closed assignment over a feeder's switches, tagged with its
/// configuration ordinal t (1-based).
class SwitchConfig {
 public:
  SwitchConfig() = default;
  /// Assignment entries are sorted by switch id; duplicate ids throw.
  SwitchConfig(int index, std::vector<std::pair<int, SwitchState>> assignment);

  static SwitchConfig all_closed(const FeederModel& model, int index = 1);

  int index() const { return index_; }
  const std::vector<std::pair<int, SwitchState>>& assignment() const { return assignment_; }

  /// Throws std::out_of_range for a switch id outside the assignment.
  bool is_open(int switch_id) const;
  /// True when the assignment covers exactly the model's switch ids.
  bool is_total_for(const FeederModel& model) const;

  /// "1=closed 2=open"; "(no switches)" when empty.
  std::string to_string() const;

  bool operator==(const SwitchConfig&) const = default;

 private:
  int index_ = 1;
  std::vector<std::pair<int, SwitchState>> assignment_;
};

}  // namespace upmu
