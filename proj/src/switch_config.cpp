#include "upmu/switch_config.hpp"

#include <algorithm>
#include <stdexcept>

#include "upmu/feeder.hpp"

namespace upmu {

SwitchConfig::SwitchConfig(int index, std::vector<std::pair<int, SwitchState>> assignment)
    : index_(index), assignment_(std::move(assignment)) {
  std::sort(assignment_.begin(), assignment_.end());
  for (std::size_t i = 1; i < assignment_.size(); ++i) {
    if (assignment_[i].first == assignment_[i - 1].first) {
      throw std::invalid_argument("switch " + std::to_string(assignment_[i].first) +
                                  " assigned twice");
    }
  }
}

SwitchConfig SwitchConfig::all_closed(const FeederModel& model, int index) {
  std::vector<std::pair<int, SwitchState>> a;
  for (int id : model.switch_ids()) a.emplace_back(id, SwitchState::closed);
  return SwitchConfig(index, std::move(a));
}

bool SwitchConfig::is_open(int switch_id) const {
  auto it = std::lower_bound(assignment_.begin(), assignment_.end(),
                             std::pair(switch_id, SwitchState::closed));
  if (it == assignment_.end() || it->first != switch_id) {
    throw std::out_of_range("switch " + std::to_string(switch_id) + " not assigned");
  }
  return it->second == SwitchState::open;
}

bool SwitchConfig::is_total_for(const FeederModel& model) const {
  const auto& ids = model.switch_ids();
  if (ids.size() != assignment_.size()) return false;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] != assignment_[i].first) return false;
  }
  return true;
}

std::string SwitchConfig::to_string() const {
  if (assignment_.empty()) return "(no switches)";
  std::string s;
  for (const auto& [id, state] : assignment_) {
    if (!s.empty()) s += ' ';
    s += std::to_string(id) + (state == SwitchState::open ? "=open" : "=closed");
  }
  return s;
}

}  // namespace upmu
