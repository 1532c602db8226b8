#include "upmu/zip_model.hpp"

#include <algorithm>
#include <iterator>

namespace upmu {

namespace {

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void add_pairs(std::span<const PhaseId> set, std::vector<PhasePair>& out) {
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) out.push_back({set[a], set[b]});
  }
}

std::vector<PhaseId> set_difference(const std::vector<PhaseId>& a, const std::vector<PhaseId>& b) {
  std::vector<PhaseId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

bool KnownInjectionSet::contains(PhaseId id) const {
  return std::binary_search(members.begin(), members.end(), id);
}

KnownInjectionSet known_injection_phases(const FeederModel& model, bool include_zip) {
  KnownInjectionSet known;
  for (int i = 1; i <= model.node_count(); ++i) {
    const FeederNode& n = model.node(i);
    const PhaseSet set = include_zip ? (n.zip | n.usm) : n.usm;
    for (Phase p : set.members()) known.members.push_back({i, p});
  }
  return known;
}

std::vector<PhaseId> compute_vzis(const PhaseGraph& graph, const KnownInjectionSet& known) {
  std::vector<PhaseId> out;
  for (PhaseId v : known.members) {
    auto idx = graph.phase_index(v);
    if (!idx) continue;
    auto incident = graph.incident(*idx);
    if (incident.empty()) continue;
    const bool all_normal = std::all_of(incident.begin(), incident.end(), [&](std::size_t e) {
      return graph.edges()[e].kind == EdgeKind::normal;
    });
    if (all_normal) out.push_back(v);
  }
  return out;
}

std::vector<PhaseId> ObjectSetR::member_phases() const {
  std::vector<PhaseId> out;
  for (const auto& p : pairs) out.insert(out.end(), p.begin(), p.end());
  for (const auto& t : triplets) out.insert(out.end(), t.begin(), t.end());
  sort_unique(out);
  return out;
}

ObjectSetR build_object_set(const PhaseGraph& graph, std::span<const PhaseId> vzis) {
  ObjectSetR r;
  r.config_index = graph.config_index();

  std::vector<PhaseId> members(vzis.begin(), vzis.end());
  sort_unique(members);
  std::vector<std::vector<PhaseId>> hood;
  hood.reserve(members.size());
  for (PhaseId v : members) hood.push_back(graph.neighborhood(v));

  // j == k contributes every pair of a single neighbourhood; j < k adds the
  // pairs inside N'_j, N'_k and N_jk plus the cross-product triplets.
  for (std::size_t j = 0; j < members.size(); ++j) {
    add_pairs(hood[j], r.pairs);
    for (std::size_t k = j + 1; k < members.size(); ++k) {
      std::vector<PhaseId> common;
      std::set_intersection(hood[j].begin(), hood[j].end(), hood[k].begin(), hood[k].end(),
                            std::back_inserter(common));
      const auto only_j = set_difference(hood[j], common);
      const auto only_k = set_difference(hood[k], common);
      add_pairs(only_j, r.pairs);
      add_pairs(only_k, r.pairs);
      add_pairs(common, r.pairs);
      for (PhaseId p : only_j) {
        for (PhaseId q : only_k) {
          for (PhaseId s : common) {
            PhaseTriplet t{p, q, s};
            std::sort(t.begin(), t.end());
            r.triplets.push_back(t);
          }
        }
      }
    }
  }
  sort_unique(r.pairs);
  sort_unique(r.triplets);
  return r;
}

}  // namespace upmu
