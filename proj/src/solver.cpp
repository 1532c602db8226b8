#include "upmu/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace upmu {

namespace {

using Clock = std::chrono::steady_clock;

bool is_covering(RowTag tag) {
  return tag == RowTag::coverage || tag == RowTag::object_pair || tag == RowTag::object_triplet;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// The covering part of an instance: each row asks for at least one selected
// channel among its members. Duplicate and dominated rows are dropped.
struct CoverSystem {
  int node_count = 0;
  int capacity = 1;
  ObjectiveWeights weights;
  std::vector<int> host;  // channel -> node (0-based)
  std::vector<std::vector<int>> node_channels;
  std::vector<std::vector<int>> rows;
  std::vector<std::vector<int>> rows_of;
  bool has_empty_row = false;

  int node_cost(int count) const {
    if (count == 0) return 0;
    return weights.nodes + weights.channels * count + weights.devices * ceil_div(count, capacity);
  }
};

CoverSystem extract(const IlpInstance& instance, const ObjectiveWeights& weights) {
  const VariableCatalog& cat = instance.catalog;
  CoverSystem sys;
  sys.node_count = cat.node_count();
  sys.capacity = cat.capacity();
  sys.weights = weights;
  for (std::size_t j = 0; j < cat.channel_count(); ++j) sys.host.push_back(cat.host_node(j) - 1);

  std::vector<std::vector<int>> rows;
  for (const Row& row : instance.rows) {
    if (!is_covering(row.tag)) continue;
    if (row.rhs > 1) throw std::logic_error("covering rows must have right-hand side at most 1");
    if (row.rhs <= 0) continue;
    std::vector<int> members;
    for (const Term& t : row.terms) {
      if (cat.role(t.var) != VarRole::channel || t.coef < 0) {
        throw std::logic_error("covering row " + row.name + " has a non-channel term");
      }
      if (t.coef > 0) members.push_back(static_cast<int>(t.var - cat.g(0)));
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) sys.has_empty_row = true;
    rows.push_back(std::move(members));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  // Shorter rows come first, so a row can only be dominated by a kept one.
  for (auto& row : rows) {
    const bool dominated = std::any_of(sys.rows.begin(), sys.rows.end(), [&](const auto& kept) {
      return std::includes(row.begin(), row.end(), kept.begin(), kept.end());
    });
    if (!dominated) sys.rows.push_back(std::move(row));
  }
  sys.node_channels.assign(static_cast<std::size_t>(sys.node_count), {});
  for (std::size_t v = 0; v < sys.host.size(); ++v) {
    sys.node_channels[static_cast<std::size_t>(sys.host[v])].push_back(static_cast<int>(v));
  }
  sys.rows_of.assign(sys.host.size(), {});
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    for (int v : sys.rows[r]) sys.rows_of[static_cast<std::size_t>(v)].push_back(static_cast<int>(r));
  }
  return sys;
}

bool covers_all(const CoverSystem& sys, const std::vector<std::uint8_t>& bits) {
  return std::all_of(sys.rows.begin(), sys.rows.end(), [&](const auto& row) {
    return std::any_of(row.begin(), row.end(), [&](int v) { return bits[static_cast<std::size_t>(v)] != 0; });
  });
}

int evaluate(const CoverSystem& sys, const std::vector<std::uint8_t>& bits) {
  std::vector<int> count(static_cast<std::size_t>(sys.node_count), 0);
  for (std::size_t v = 0; v < bits.size(); ++v) {
    if (bits[v]) ++count[static_cast<std::size_t>(sys.host[v])];
  }
  int total = 0;
  for (int c : count) total += sys.node_cost(c);
  return total;
}

std::vector<std::uint8_t> greedy(const CoverSystem& sys) {
  const std::size_t n = sys.host.size();
  std::vector<std::uint8_t> bits(n, 0);
  std::vector<char> met(sys.rows.size(), 0);
  std::size_t unmet = sys.rows.size();
  while (unmet > 0) {
    int best = -1;
    int best_gain = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (bits[v]) continue;
      int gain = 0;
      for (int r : sys.rows_of[v]) gain += met[static_cast<std::size_t>(r)] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best = static_cast<int>(v);
      }
    }
    bits[static_cast<std::size_t>(best)] = 1;
    for (int r : sys.rows_of[static_cast<std::size_t>(best)]) {
      if (!met[static_cast<std::size_t>(r)]) {
        met[static_cast<std::size_t>(r)] = 1;
        --unmet;
      }
    }
  }
  std::vector<int> support(sys.rows.size(), 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!bits[v]) continue;
    for (int r : sys.rows_of[v]) ++support[static_cast<std::size_t>(r)];
  }
  for (std::size_t v = n; v-- > 0;) {
    if (!bits[v]) continue;
    const bool redundant = std::all_of(sys.rows_of[v].begin(), sys.rows_of[v].end(),
                                       [&](int r) { return support[static_cast<std::size_t>(r)] > 1; });
    if (!redundant) continue;
    bits[v] = 0;
    for (int r : sys.rows_of[v]) --support[static_cast<std::size_t>(r)];
  }
  return bits;
}

// Subgradient iterations for the root bound and for each search node.
constexpr int kRootIterations = 400;
constexpr int kNodeIterations = 6;

// Depth-first branch-and-bound over the channel bits with unit propagation.
// Branching picks the unmet row with fewest free channels and tries each of
// them as the row's first selected channel. Nodes are pruned by a cheap
// counting bound and then by a Lagrangian bound that prices the covering
// rows and lets every node choose its channel count independently.
class Search {
 public:
  Search(const CoverSystem& sys, Clock::time_point deadline)
      : sys_(sys),
        deadline_(deadline),
        value_(sys.host.size(), -1),
        sat_(sys.rows.size(), 0),
        free_(sys.rows.size(), 0),
        count_(static_cast<std::size_t>(sys.node_count), 0),
        var_stamp_(sys.host.size(), 0),
        node_stamp_(static_cast<std::size_t>(sys.node_count), 0),
        hits_(sys.host.size(), 0),
        open_(static_cast<std::size_t>(sys.node_count), 0),
        price_(sys.rows.size(), 0.0),
        step_dir_(sys.rows.size(), 0.0),
        pick_(sys.host.size(), 0) {
    for (std::size_t r = 0; r < sys.rows.size(); ++r) free_[r] = static_cast<int>(sys.rows[r].size());
  }

  /// Bound at the current (root) state, tightening the row prices against
  /// `upper`, the best known objective.
  int root_bound(int upper) {
    step_scale_ = 2.0;
    return std::max(bound(), lagrangian_bound(kRootIterations, upper));
  }

  const std::vector<double>& prices() const { return price_; }
  void set_prices(const std::vector<double>& prices) { price_ = prices; }

  bool fix(int v, int value) { return assign(v, value); }

  // Returns true when the search ran to completion.
  bool run(int prune_at, bool stop_at_first) {
    prune_at_ = prune_at;
    stop_at_first_ = stop_at_first;
    dfs();
    return !timed_out_;
  }

  bool timed_out() const { return timed_out_; }
  long long nodes() const { return nodes_; }
  const std::vector<std::uint8_t>& best() const { return best_; }
  bool found() const { return found_; }
  int best_cost() const { return best_cost_; }
  const std::vector<int>& improvements() const { return improvements_; }

 private:
  bool assign(int v, int value) {
    pending_.clear();
    pending_.push_back({v, value});
    while (!pending_.empty()) {
      auto [x, val] = pending_.back();
      pending_.pop_back();
      const auto ux = static_cast<std::size_t>(x);
      if (value_[ux] != -1) {
        if (value_[ux] != val) return false;
        continue;
      }
      apply(x, val);
      if (val == 1) continue;
      for (int r : sys_.rows_of[ux]) {
        const auto ur = static_cast<std::size_t>(r);
        if (sat_[ur] > 0) continue;
        if (free_[ur] == 0) return false;
        if (free_[ur] == 1) {
          for (int y : sys_.rows[ur]) {
            if (value_[static_cast<std::size_t>(y)] == -1) {
              pending_.push_back({y, 1});
              break;
            }
          }
        }
      }
    }
    return true;
  }

  void apply(int x, int val) {
    const auto ux = static_cast<std::size_t>(x);
    value_[ux] = static_cast<signed char>(val);
    trail_.push_back(x);
    for (int r : sys_.rows_of[ux]) {
      --free_[static_cast<std::size_t>(r)];
      if (val == 1) ++sat_[static_cast<std::size_t>(r)];
    }
    if (val == 1) {
      const auto node = static_cast<std::size_t>(sys_.host[ux]);
      cost_ += node_value(node, count_[node] + 1) - node_value(node, count_[node]);
      ++count_[node];
      ++channels_;
    }
  }

  // Cost of node i with c channels; an opened node pays for activation even
  // without channels.
  int node_value(std::size_t i, int c) const {
    if (c == 0) return open_[i] ? sys_.weights.nodes : 0;
    return sys_.node_cost(c);
  }

  // Trail entries below zero record opened nodes.
  void open_node(std::size_t i) {
    cost_ -= node_value(i, count_[i]);
    open_[i] = 1;
    cost_ += node_value(i, count_[i]);
    trail_.push_back(-static_cast<int>(i) - 1);
  }

  bool close_node(std::size_t i) {
    for (int v : sys_.node_channels[i]) {
      if (value_[static_cast<std::size_t>(v)] == -1 && !assign(v, 0)) return false;
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const int x = trail_.back();
      trail_.pop_back();
      if (x < 0) {
        const auto node = static_cast<std::size_t>(-x - 1);
        cost_ -= node_value(node, count_[node]);
        open_[node] = 0;
        cost_ += node_value(node, count_[node]);
        continue;
      }
      const auto ux = static_cast<std::size_t>(x);
      const int val = value_[ux];
      for (int r : sys_.rows_of[ux]) {
        ++free_[static_cast<std::size_t>(r)];
        if (val == 1) --sat_[static_cast<std::size_t>(r)];
      }
      if (val == 1) {
        const auto node = static_cast<std::size_t>(sys_.host[ux]);
        --count_[node];
        cost_ -= node_value(node, count_[node] + 1) - node_value(node, count_[node]);
        --channels_;
      }
      value_[ux] = -1;
    }
  }

  int bound() {
    unmet_.clear();
    for (std::size_t r = 0; r < sys_.rows.size(); ++r) {
      if (sat_[r] == 0) unmet_.push_back(static_cast<int>(r));
    }
    if (unmet_.empty()) return cost_;
    std::stable_sort(unmet_.begin(), unmet_.end(), [&](int a, int b) {
      return free_[static_cast<std::size_t>(a)] < free_[static_cast<std::size_t>(b)];
    });

    // Rows with pairwise disjoint free channels each need their own channel.
    ++stamp_;
    int packed = 0;
    for (int r : unmet_) {
      const auto& row = sys_.rows[static_cast<std::size_t>(r)];
      bool disjoint = true;
      for (int v : row) {
        const auto uv = static_cast<std::size_t>(v);
        if (value_[uv] == -1 && var_stamp_[uv] == stamp_) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      ++packed;
      for (int v : row) var_stamp_[static_cast<std::size_t>(v)] = stamp_;
    }

    // One channel meets at most `widest` unmet rows.
    int widest = 1;
    for (int r : unmet_) {
      for (int v : sys_.rows[static_cast<std::size_t>(r)]) {
        const auto uv = static_cast<std::size_t>(v);
        if (value_[uv] == -1) widest = std::max(widest, ++hits_[uv]);
      }
    }
    for (int r : unmet_) {
      for (int v : sys_.rows[static_cast<std::size_t>(r)]) hits_[static_cast<std::size_t>(v)] = 0;
    }
    const int more_channels = std::max(packed, ceil_div(static_cast<int>(unmet_.size()), widest));

    // Rows reachable only through inactive nodes, with disjoint node sets,
    // each activate a distinct node.
    ++stamp_;
    int more_nodes = 0;
    for (int r : unmet_) {
      const auto& row = sys_.rows[static_cast<std::size_t>(r)];
      bool usable = true;
      for (int v : row) {
        const auto uv = static_cast<std::size_t>(v);
        if (value_[uv] != -1) continue;
        const auto node = static_cast<std::size_t>(sys_.host[uv]);
        if (count_[node] > 0 || open_[node] || node_stamp_[node] == stamp_) {
          usable = false;
          break;
        }
      }
      if (!usable) continue;
      ++more_nodes;
      for (int v : row) {
        if (value_[static_cast<std::size_t>(v)] == -1) {
          node_stamp_[static_cast<std::size_t>(sys_.host[static_cast<std::size_t>(v)])] = stamp_;
        }
      }
    }

    int devices_now = 0;
    for (int c : count_) devices_now += ceil_div(c, sys_.capacity);
    const int more_devices =
        std::max(more_nodes, ceil_div(channels_ + more_channels, sys_.capacity) - devices_now);

    const ObjectiveWeights& w = sys_.weights;
    return cost_ + w.channels * more_channels + w.nodes * more_nodes + w.devices * more_devices;
  }

  // L(u): prices of the unmet rows plus, per node, the least cost minus
  // priced benefit over every channel count the free channels allow. Fills
  // pick_ with the minimising selection.
  double lagrange_value() {
    double total = 0.0;
    for (std::size_t r = 0; r < sys_.rows.size(); ++r) {
      if (sat_[r] == 0) total += price_[r];
    }
    std::fill(pick_.begin(), pick_.end(), 0);
    for (std::size_t i = 0; i < sys_.node_channels.size(); ++i) {
      const int fixed = count_[i];
      ranked_.clear();
      for (int v : sys_.node_channels[i]) {
        const auto uv = static_cast<std::size_t>(v);
        if (value_[uv] != -1) continue;
        double benefit = 0.0;
        for (int r : sys_.rows_of[uv]) {
          if (sat_[static_cast<std::size_t>(r)] == 0) benefit += price_[static_cast<std::size_t>(r)];
        }
        if (benefit > 0.0) ranked_.emplace_back(-benefit, v);
      }
      std::sort(ranked_.begin(), ranked_.end());
      double best = node_value(i, fixed);
      std::size_t best_k = 0;
      double gained = 0.0;
      for (std::size_t k = 0; k < ranked_.size(); ++k) {
        gained -= ranked_[k].first;
        const double value = node_value(i, fixed + static_cast<int>(k) + 1) - gained;
        if (value < best - 1e-9) {
          best = value;
          best_k = k + 1;
        }
      }
      total += best;
      for (std::size_t k = 0; k < best_k; ++k) pick_[static_cast<std::size_t>(ranked_[k].second)] = 1;
    }
    return total;
  }

  int lagrangian_bound(int iterations, int upper) {
    double best = -std::numeric_limits<double>::infinity();
    int stall = 0;
    for (int it = 0; it < iterations; ++it) {
      const double value = lagrange_value();
      if (value > best + 1e-9) {
        best = value;
        stall = 0;
      } else if (++stall >= 8) {
        step_scale_ = std::max(step_scale_ * 0.5, 1e-3);
        stall = 0;
      }
      if (std::ceil(best - 1e-6) >= upper) break;
      double norm = 0.0;
      for (std::size_t r = 0; r < sys_.rows.size(); ++r) {
        step_dir_[r] = 0.0;
        if (sat_[r] > 0) continue;
        int picked = 0;
        for (int v : sys_.rows[r]) picked += pick_[static_cast<std::size_t>(v)];
        step_dir_[r] = 1.0 - picked;
        norm += step_dir_[r] * step_dir_[r];
      }
      // The priced selection meets every unmet row, so no price move helps.
      if (norm == 0.0) break;
      const double target = upper < std::numeric_limits<int>::max() ? upper : value * 1.1 + 1.0;
      const double step = step_scale_ * std::max(target - value, 0.5) / norm;
      for (std::size_t r = 0; r < sys_.rows.size(); ++r) {
        if (step_dir_[r] != 0.0) price_[r] = std::max(0.0, price_[r] + step * step_dir_[r]);
      }
    }
    return static_cast<int>(std::ceil(best - 1e-6));
  }

  // Reduced-cost fixing at the current prices: a free channel whose forced
  // value lifts L(u) to `limit` takes the other value. Returns false when a
  // fix conflicts.
  bool lagrangian_fixing(int limit) {
    double total = 0.0;
    for (std::size_t r = 0; r < sys_.rows.size(); ++r) {
      if (sat_[r] == 0) total += price_[r];
    }
    fixes_.clear();
    std::vector<std::pair<double, int>> ranked;
    for (std::size_t i = 0; i < sys_.node_channels.size(); ++i) {
      const int fixed = count_[i];
      ranked.clear();
      for (int v : sys_.node_channels[i]) {
        const auto uv = static_cast<std::size_t>(v);
        if (value_[uv] != -1) continue;
        double benefit = 0.0;
        for (int r : sys_.rows_of[uv]) {
          if (sat_[static_cast<std::size_t>(r)] == 0) benefit += price_[static_cast<std::size_t>(r)];
        }
        ranked.emplace_back(-benefit, v);
      }
      if (ranked.empty()) {
        total += node_value(i, fixed);
        continue;
      }
      std::sort(ranked.begin(), ranked.end());
      // Least node value over channel counts, leaving channel `skip` out or,
      // with `force`, taking it first.
      auto best_over = [&](std::size_t skip, bool force) {
        double best = force ? std::numeric_limits<double>::infinity() : node_value(i, fixed);
        double gained = force ? -ranked[skip].first : 0.0;
        int taken = force ? 1 : 0;
        if (force) best = node_value(i, fixed + 1) - gained;
        for (std::size_t k = 0; k < ranked.size(); ++k) {
          if (k == skip || -ranked[k].first <= 0.0) continue;
          gained -= ranked[k].first;
          ++taken;
          best = std::min(best, node_value(i, fixed + taken) - gained);
        }
        return best;
      };
      const double base = best_over(ranked.size(), false);
      total += base;
      for (std::size_t k = 0; k < ranked.size(); ++k) {
        const double with = best_over(k, true);
        const double without = best_over(k, false);
        fixes_.push_back({ranked[k].second, with - base, without - base});
      }
      // A node that must host a channel is opened.
      if (fixed == 0 && !open_[i]) {
        fixes_.push_back({-static_cast<int>(i) - 1, 0.0, -base});
      }
    }
    for (const Fix& f : fixes_) {
      if (f.var < 0) {
        const auto node = static_cast<std::size_t>(-f.var - 1);
        if (std::ceil(total + f.force_off - 1e-6) >= limit && count_[node] == 0 && !open_[node]) {
          open_node(node);
        }
        continue;
      }
      const bool need_off = std::ceil(total + f.force_on - 1e-6) >= limit;
      const bool need_on = std::ceil(total + f.force_off - 1e-6) >= limit;
      if (need_off && need_on) return false;
      if (need_off && !assign(f.var, 0)) return false;
      if (need_on && !assign(f.var, 1)) return false;
    }
    return true;
  }

  int pick_row() const {
    int best = -1;
    int best_free = 0;
    for (std::size_t r = 0; r < sys_.rows.size(); ++r) {
      if (sat_[r] > 0) continue;
      if (best < 0 || free_[r] < best_free) {
        best = static_cast<int>(r);
        best_free = free_[r];
      }
    }
    return best;
  }

  void record_solution() {
    int cost = 0;
    for (int c : count_) cost += sys_.node_cost(c);
    if (found_ && cost >= best_cost_) return;
    found_ = true;
    best_cost_ = cost;
    best_.assign(value_.size(), 0);
    for (std::size_t v = 0; v < value_.size(); ++v) best_[v] = value_[v] == 1 ? 1 : 0;
    improvements_.push_back(cost);
    if (!stop_at_first_) prune_at_ = std::min(prune_at_, cost);
  }

  // The unopened node hosting the most channels of the priced selection, or
  // -1 when that selection only uses active nodes.
  int pick_node() const {
    int best = -1;
    int best_picked = 0;
    for (std::size_t i = 0; i < sys_.node_channels.size(); ++i) {
      if (count_[i] > 0 || open_[i]) continue;
      int picked = 0;
      for (int v : sys_.node_channels[i]) {
        if (value_[static_cast<std::size_t>(v)] == -1) picked += pick_[static_cast<std::size_t>(v)];
      }
      if (picked > best_picked) {
        best = static_cast<int>(i);
        best_picked = picked;
      }
    }
    return best;
  }

  void dfs() {
    if (done_) return;
    if ((++nodes_ & 63) == 0 && Clock::now() > deadline_) {
      timed_out_ = done_ = true;
      return;
    }
    if (bound() >= prune_at_) return;
    const std::size_t mark = trail_.size();
    if (pick_row() >= 0) {
      step_scale_ = 0.1;
      if (lagrangian_bound(kNodeIterations, prune_at_) >= prune_at_ ||
          !lagrangian_fixing(prune_at_) || bound() >= prune_at_) {
        undo(mark);
        return;
      }
    }
    const int r = pick_row();
    if (r < 0) {
      record_solution();
      if (stop_at_first_) done_ = true;
      undo(mark);
      return;
    }
    lagrange_value();
    if (const int i = pick_node(); i >= 0) {
      const auto node = static_cast<std::size_t>(i);
      const std::size_t inner = trail_.size();
      open_node(node);
      dfs();
      undo(inner);
      if (!done_ && close_node(node)) dfs();
      undo(mark);
      return;
    }
    std::vector<int> choices;
    for (int v : sys_.rows[static_cast<std::size_t>(r)]) {
      if (value_[static_cast<std::size_t>(v)] == -1) choices.push_back(v);
    }
    auto marginal = [&](int v) {
      const auto node = static_cast<std::size_t>(sys_.host[static_cast<std::size_t>(v)]);
      return node_value(node, count_[node] + 1) - node_value(node, count_[node]);
    };
    std::stable_sort(choices.begin(), choices.end(),
                     [&](int a, int b) { return marginal(a) < marginal(b); });
    const std::size_t branch_mark = trail_.size();
    for (int v : choices) {
      if (sat_[static_cast<std::size_t>(r)] > 0) {
        // An earlier exclusion forced a channel of this row on.
        dfs();
        break;
      }
      if (value_[static_cast<std::size_t>(v)] != -1) continue;
      const std::size_t inner = trail_.size();
      if (assign(v, 1)) dfs();
      undo(inner);
      if (done_) break;
      if (!assign(v, 0)) break;
    }
    undo(branch_mark);
    undo(mark);
  }

  struct Fix {
    int var;
    double force_on;
    double force_off;
  };

  const CoverSystem& sys_;
  Clock::time_point deadline_;
  std::vector<signed char> value_;
  std::vector<int> sat_;
  std::vector<int> free_;
  std::vector<int> count_;
  std::vector<int> trail_;
  std::vector<std::pair<int, int>> pending_;
  std::vector<int> unmet_;
  std::vector<unsigned> var_stamp_;
  std::vector<unsigned> node_stamp_;
  std::vector<int> hits_;
  std::vector<char> open_;
  std::vector<double> price_;
  std::vector<double> step_dir_;
  std::vector<char> pick_;
  std::vector<std::pair<double, int>> ranked_;
  std::vector<Fix> fixes_;
  double step_scale_ = 2.0;
  unsigned stamp_ = 0;
  int cost_ = 0;
  int channels_ = 0;
  int prune_at_ = 0;
  bool stop_at_first_ = false;
  bool done_ = false;
  bool timed_out_ = false;
  long long nodes_ = 0;
  bool found_ = false;
  int best_cost_ = 0;
  std::vector<std::uint8_t> best_;
  std::vector<int> improvements_;
};

}  // namespace

Solution make_solution(const VariableCatalog& catalog, std::vector<std::uint8_t> channels,
                       const ObjectiveWeights& weights) {
  if (channels.size() != catalog.channel_count()) {
    throw std::invalid_argument("channel vector does not match the catalog");
  }
  Solution s;
  const auto m = static_cast<std::size_t>(catalog.node_count());
  std::vector<int> count(m, 0);
  for (std::size_t j = 0; j < channels.size(); ++j) {
    if (channels[j]) ++count[static_cast<std::size_t>(catalog.host_node(j) - 1)];
  }
  s.node_active.resize(m);
  s.devices.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    s.node_active[i] = count[i] > 0 ? 1 : 0;
    s.devices[i] = ceil_div(count[i], catalog.capacity());
    s.components.nodes += s.node_active[i];
    s.components.channels += count[i];
    s.components.devices += s.devices[i];
  }
  s.channels = std::move(channels);
  s.objective = s.components.weighted(weights);
  return s;
}

std::vector<int> variable_values(const VariableCatalog& catalog, const Solution& solution) {
  std::vector<int> x(catalog.variable_count(), 0);
  for (int i = 1; i <= catalog.node_count(); ++i) {
    x[catalog.z(i)] = solution.node_active[static_cast<std::size_t>(i - 1)];
    x[catalog.n(i)] = solution.devices[static_cast<std::size_t>(i - 1)];
  }
  for (std::size_t j = 0; j < catalog.channel_count(); ++j) x[catalog.g(j)] = solution.channels[j];
  return x;
}

std::vector<std::string> violated_rows(const IlpInstance& instance, const Solution& solution) {
  const std::vector<int> x = variable_values(instance.catalog, solution);
  std::vector<std::string> out;
  for (const Row& row : instance.rows) {
    long long lhs = 0;
    for (const Term& t : row.terms) lhs += static_cast<long long>(t.coef) * x[t.var];
    if (lhs < row.rhs) out.push_back(row.name);
  }
  return out;
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::timed_out: return "timed-out";
  }
  return "?";
}

std::optional<std::vector<std::uint8_t>> greedy_cover(const IlpInstance& instance) {
  const CoverSystem sys = extract(instance, {});
  if (sys.has_empty_row) return std::nullopt;
  return greedy(sys);
}

SolveResult solve(const IlpInstance& instance, const SolveOptions& options) {
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(options.time_limit_seconds));
  const CoverSystem sys = extract(instance, options.weights);
  const VariableCatalog& cat = instance.catalog;

  SolveResult result;
  if (sys.has_empty_row) {
    result.status = SolveStatus::infeasible;
    return result;
  }

  BoundTrace trace;
  std::vector<std::uint8_t> incumbent = greedy(sys);
  int incumbent_cost = evaluate(sys, incumbent);
  trace.greedy_objective = incumbent_cost;
  if (options.seed_channels && options.seed_channels->size() == incumbent.size() &&
      covers_all(sys, *options.seed_channels)) {
    const int seed_cost = evaluate(sys, *options.seed_channels);
    if (seed_cost < incumbent_cost) {
      incumbent = *options.seed_channels;
      incumbent_cost = seed_cost;
    }
  }
  trace.incumbents.push_back(incumbent_cost);

  // Phase 1: optimal value.
  Search search(sys, deadline);
  trace.root_bound = std::min(search.root_bound(incumbent_cost), incumbent_cost);
  const std::vector<double> root_prices = search.prices();
  trace.bounds.push_back(trace.root_bound);
  const bool complete = search.run(incumbent_cost, false);
  trace.nodes_explored += search.nodes();
  if (search.found() && search.best_cost() < incumbent_cost) {
    incumbent = search.best();
    incumbent_cost = search.best_cost();
  }
  for (int c : search.improvements()) {
    if (c < trace.incumbents.back()) trace.incumbents.push_back(c);
  }

  auto finish = [&](SolveStatus status, int bound) {
    trace.final_bound = bound;
    if (trace.bounds.back() != bound) trace.bounds.push_back(bound);
    Solution s = make_solution(cat, incumbent, options.weights);
    s.proof = trace;
    if (auto bad = violated_rows(instance, s); !bad.empty()) {
      throw std::logic_error("solver produced a plan violating row " + bad.front());
    }
    result.status = status;
    result.lower_bound = bound;
    result.solution = std::move(s);
    return result;
  };

  if (!complete) return finish(SolveStatus::timed_out, std::min(trace.root_bound, incumbent_cost));

  // Phase 2: lexicographically smallest optimal channel vector, fixing one
  // prefix bit at a time.
  const int target = incumbent_cost;
  std::vector<signed char> fixed;
  bool tie_break_complete = true;
  for (std::size_t j = 0; j < incumbent.size(); ++j) {
    if (!incumbent[j]) {
      fixed.push_back(0);
      continue;
    }
    fixed.push_back(0);
    Search probe(sys, deadline);
    probe.set_prices(root_prices);
    bool consistent = true;
    for (std::size_t k = 0; k < fixed.size() && consistent; ++k) {
      consistent = probe.fix(static_cast<int>(k), fixed[k]);
    }
    bool improved = false;
    if (consistent) {
      const bool finished = probe.run(target + 1, true);
      trace.nodes_explored += probe.nodes();
      if (probe.found()) {
        incumbent = probe.best();
        improved = true;
      } else if (!finished) {
        tie_break_complete = false;
      }
    }
    if (!tie_break_complete) break;
    if (!improved) fixed.back() = 1;
  }
  trace.tie_break_complete = tie_break_complete;
  return finish(SolveStatus::optimal, target);
}

}  // namespace upmu
