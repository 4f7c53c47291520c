#pragma once

// Brute-force reference implementations for every decision problem and
// enumeration in the library. These are deliberately written from the
// problem definitions only; none of them share code with the real solvers,
// so they can serve as independent test anchors. All of them refuse
// oversized inputs via SizeGuard instead of silently running forever.

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "mbcut/graph.hpp"

namespace mbcut {

struct SizeGuard {
  int max_colored_edges = 20;
  std::uint64_t max_subsets = std::uint64_t{1} << 20;

  // MBCUT_GUARD=<max_edges>[,<max_subsets>] overrides the defaults.
  static SizeGuard from_env() {
    SizeGuard g;
    const char* env = std::getenv("MBCUT_GUARD");
    if (!env) return g;
    std::string s(env);
    auto comma = s.find(',');
    try {
      g.max_colored_edges = std::stoi(s.substr(0, comma));
      if (comma != std::string::npos) {
        g.max_subsets = std::stoull(s.substr(comma + 1));
      }
    } catch (const std::exception&) {
      throw ValidationError("MBCUT_GUARD must be <edges>[,<subsets>]");
    }
    return g;
  }
};

namespace detail {

inline std::uint64_t subset_count_upto(int n, int max_size,
                                       std::uint64_t cap) {
  std::uint64_t total = 0, binom = 1;
  for (int s = 0; s <= max_size && s <= n; ++s) {
    total += binom;
    if (total > cap) return cap + 1;
    if (binom > cap) return cap + 1;
    binom = binom * static_cast<std::uint64_t>(n - s) /
            static_cast<std::uint64_t>(s + 1);
  }
  return total;
}

inline void check_subset_guard(int n, int max_size, const SizeGuard& guard,
                               const std::string& what) {
  if (n > guard.max_colored_edges) {
    throw GuardError(what + ": " + std::to_string(n) +
                     " candidate edges exceed the guard of " +
                     std::to_string(guard.max_colored_edges) +
                     " (set MBCUT_GUARD to override)");
  }
  if (subset_count_upto(n, max_size, guard.max_subsets) > guard.max_subsets) {
    throw GuardError(what + ": subset count exceeds the guard of " +
                     std::to_string(guard.max_subsets) +
                     " (set MBCUT_GUARD to override)");
  }
}

// Visits subsets of `ids` of size 0..max_size, ordered by size and then
// lexicographically by position. Stops early when fn returns true.
template <class Fn>
void for_each_subset_upto(const std::vector<int>& ids, int max_size, Fn&& fn) {
  const int n = static_cast<int>(ids.size());
  std::vector<int> subset;
  if (fn(subset)) return;
  for (int s = 1; s <= max_size && s <= n; ++s) {
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      subset.clear();
      for (int i : idx) subset.push_back(ids[i]);
      if (fn(subset)) return;
      int i = s - 1;
      while (i >= 0 && idx[i] == n - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

inline bool is_cut(const ColoredDigraph& g, std::span<const int> x,
                   std::span<const int> y, const EdgeSet& removed) {
  auto mark = reachable_mask(g, x, &removed);
  for (int v : y) {
    if (mark[v]) return false;
  }
  return true;
}

}  // namespace detail

// Smallest budget-respecting cut, ties broken lexicographically.
inline std::optional<CutSet> brute_solve_mbcut(const CutInstance& inst,
                                               const SizeGuard& guard = {}) {
  const auto candidates = inst.graph.colored_arcs().ids();
  const int k = inst.budgets.total();
  detail::check_subset_guard(static_cast<int>(candidates.size()), k, guard,
                             "brute_solve_mbcut");
  std::optional<CutSet> found;
  detail::for_each_subset_upto(candidates, k, [&](const std::vector<int>& sub) {
    CutSet cut{sub};
    if (!budget_respecting(inst.graph, cut, inst.budgets)) return false;
    if (!detail::is_cut(inst.graph, inst.x, inst.y,
                        cut.to_set(inst.graph.arc_count()))) {
      return false;
    }
    found = std::move(cut);
    return true;
  });
  return found;
}

// Every inclusion-minimal X-Y cut with at most max_size arcs. Candidates are
// generated as out-arc boundaries of vertex sets, then each candidate is
// tested for minimality literally (re-adding one arc at a time).
inline CutFamily brute_minimal_cuts(const ColoredDigraph& g,
                                    std::span<const int> x,
                                    std::span<const int> y, int max_size,
                                    const SizeGuard& guard = {}) {
  std::vector<char> fixed(g.vertex_count + 1, 0);
  for (int v : x) fixed[v] = 1;
  for (int v : y) {
    if (fixed[v]) throw ValidationError("x and y sets must be disjoint");
    fixed[v] = 2;
  }
  std::vector<int> free_verts;
  for (int v = 1; v <= g.vertex_count; ++v) {
    if (!fixed[v]) free_verts.push_back(v);
  }
  if (free_verts.size() >= 63 ||
      (std::uint64_t{1} << free_verts.size()) > guard.max_subsets) {
    throw GuardError("brute_minimal_cuts: too many vertex subsets "
                     "(set MBCUT_GUARD to override)");
  }
  CutFamily family;
  family.origin = CutFamily::Origin::brute;
  std::vector<char> mark(g.vertex_count + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_verts.size());
       ++mask) {
    std::fill(mark.begin(), mark.end(), 0);
    for (int v : x) mark[v] = 1;
    for (std::size_t i = 0; i < free_verts.size(); ++i) {
      if (mask >> i & 1) mark[free_verts[i]] = 1;
    }
    CutSet cut = delta_plus(g, mark);
    if (cut.size() > max_size || family.contains(cut)) continue;
    if (classify_cut(g, x, y, cut.to_set(g.arc_count())) ==
        CutClass::minimal) {
      family.add(std::move(cut));
    }
  }
  return family;
}

// Minimum-size cuts made of Z arcs only: the flow engine's ground truth.
struct MinZCuts {
  int lambda = -1;  // -1 when no Z-respecting cut of size <= k exists
  std::vector<CutSet> cuts;
};

inline MinZCuts brute_min_z_cuts(const ColoredDigraph& g,
                                 std::span<const int> x,
                                 std::span<const int> y, const EdgeSet& z,
                                 int k, const SizeGuard& guard = {}) {
  const auto ids = z.ids();
  detail::check_subset_guard(static_cast<int>(ids.size()), std::max(k, 0),
                             guard, "brute_min_z_cuts");
  MinZCuts result;
  for (int size = 0; size <= k; ++size) {
    detail::for_each_subset_upto(ids, size, [&](const std::vector<int>& sub) {
      if (static_cast<int>(sub.size()) != size) return false;
      CutSet cut{sub};
      if (detail::is_cut(g, x, y, cut.to_set(g.arc_count()))) {
        result.cuts.push_back(std::move(cut));
      }
      return false;
    });
    if (!result.cuts.empty()) {
      result.lambda = size;
      break;
    }
  }
  return result;
}

// Skew separation: after deleting the cut, no s_i may reach t_j for i >= j.
inline bool skew_separated(const ColoredDigraph& g,
                           const std::vector<std::pair<int, int>>& pairs,
                           const EdgeSet& removed) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    int src = pairs[i].first;
    auto mark = reachable_mask(g, std::span<const int>(&src, 1), &removed);
    for (std::size_t j = 0; j <= i; ++j) {
      if (mark[pairs[j].second]) return false;
    }
  }
  return true;
}

inline std::optional<CutSet> brute_solve_skew(const SkewInstance& inst,
                                              const SizeGuard& guard = {}) {
  const auto candidates = inst.graph.colored_arcs().ids();
  const int k = inst.budgets.total();
  detail::check_subset_guard(static_cast<int>(candidates.size()), k, guard,
                             "brute_solve_skew");
  std::optional<CutSet> found;
  detail::for_each_subset_upto(candidates, k, [&](const std::vector<int>& sub) {
    CutSet cut{sub};
    if (!budget_respecting(inst.graph, cut, inst.budgets)) return false;
    if (!skew_separated(inst.graph, inst.pairs,
                        cut.to_set(inst.graph.arc_count()))) {
      return false;
    }
    found = std::move(cut);
    return true;
  });
  return found;
}

inline bool is_acyclic_without(const ColoredDigraph& g,
                               const EdgeSet& removed) {
  // Kahn peeling; a self-loop keeps its vertex forever unpeeled.
  std::vector<int> indeg(g.vertex_count + 1, 0);
  for (int id = 1; id <= g.arc_count(); ++id) {
    if (!removed.contains(id)) ++indeg[g.arc(id).head];
  }
  std::vector<int> queue;
  for (int v = 1; v <= g.vertex_count; ++v) {
    if (indeg[v] == 0) queue.push_back(v);
  }
  int peeled = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    ++peeled;
    for (int id : g.out[v]) {
      if (removed.contains(id)) continue;
      if (--indeg[g.arc(id).head] == 0) queue.push_back(g.arc(id).head);
    }
  }
  return peeled == g.vertex_count;
}

inline std::optional<CutSet> brute_solve_dfas(const DfasInstance& inst,
                                              const SizeGuard& guard = {}) {
  const auto candidates = inst.graph.colored_arcs().ids();
  const int k = inst.budgets.total();
  detail::check_subset_guard(static_cast<int>(candidates.size()), k, guard,
                             "brute_solve_dfas");
  std::optional<CutSet> found;
  detail::for_each_subset_upto(candidates, k, [&](const std::vector<int>& sub) {
    CutSet cut{sub};
    if (!budget_respecting(inst.graph, cut, inst.budgets)) return false;
    if (!is_acyclic_without(inst.graph, cut.to_set(inst.graph.arc_count()))) {
      return false;
    }
    found = std::move(cut);
    return true;
  });
  return found;
}

// Chain search over path subsets: once a path is touched, deleting all of it
// can only help, so subsets of whole paths are exhaustive.
inline std::optional<CutSet> brute_solve_chain(const ChainInstance& inst,
                                               const SizeGuard& guard = {}) {
  if (inst.k < 0) return std::nullopt;
  const int p = static_cast<int>(inst.paths.size());
  detail::check_subset_guard(p, inst.k, guard, "brute_solve_chain");
  std::vector<int> indices(p);
  for (int i = 0; i < p; ++i) indices[i] = i;
  std::optional<CutSet> found;
  std::span<const int> s(&inst.s, 1), t(&inst.t, 1);
  detail::for_each_subset_upto(indices, inst.k, [&](const std::vector<int>& sub) {
    EdgeSet removed(inst.graph.arc_count());
    std::vector<int> ids;
    for (int pi : sub) {
      for (int id : inst.paths[pi]) {
        removed.insert(id);
        ids.push_back(id);
      }
    }
    if (!detail::is_cut(inst.graph, s, t, removed)) return false;
    found = CutSet::from_ids(std::move(ids));
    return true;
  });
  return found;
}

// Smallest-weight-respecting cut of cardinality <= k and weight <= w.
inline std::optional<CutSet> brute_solve_weighted(
    const WeightedCutInstance& inst, const SizeGuard& guard = {}) {
  std::vector<int> ids(inst.graph.arc_count());
  for (int i = 0; i < inst.graph.arc_count(); ++i) ids[i] = i + 1;
  detail::check_subset_guard(static_cast<int>(ids.size()), inst.k, guard,
                             "brute_solve_weighted");
  std::optional<CutSet> found;
  std::span<const int> s(&inst.s, 1), t(&inst.t, 1);
  detail::for_each_subset_upto(ids, inst.k, [&](const std::vector<int>& sub) {
    CutSet cut{sub};
    if (inst.weight_of(cut) > inst.w) return false;
    if (!detail::is_cut(inst.graph, s, t,
                        cut.to_set(inst.graph.arc_count()))) {
      return false;
    }
    found = std::move(cut);
    return true;
  });
  return found;
}

// The minimum-weight family F and its closest-to-t subfamily G.
struct ClosestFamilies {
  CutFamily all;      // F
  CutFamily closest;  // G
};

namespace detail {

// G keeps members with no other member whose deletion leaves a superset of
// reachable vertices.
inline CutFamily closest_subfamily(const ColoredDigraph& g, int s,
                                   const CutFamily& family) {
  std::vector<std::vector<char>> reach;
  reach.reserve(family.cuts.size());
  std::span<const int> src(&s, 1);
  for (const auto& cut : family.cuts) {
    EdgeSet removed = cut.to_set(g.arc_count());
    reach.push_back(reachable_mask(g, src, &removed));
  }
  auto subset_of = [&](const std::vector<char>& a,
                       const std::vector<char>& b) {
    for (std::size_t v = 0; v < a.size(); ++v) {
      if (a[v] && !b[v]) return false;
    }
    return true;
  };
  CutFamily result;
  result.origin = CutFamily::Origin::brute;
  for (std::size_t i = 0; i < family.cuts.size(); ++i) {
    bool beaten = false;
    for (std::size_t j = 0; j < family.cuts.size() && !beaten; ++j) {
      if (i != j && subset_of(reach[i], reach[j])) beaten = true;
    }
    if (!beaten) result.add(family.cuts[i]);
  }
  return result;
}

}  // namespace detail

inline ClosestFamilies brute_closest_families_weighted(
    const WeightedCutInstance& inst, const SizeGuard& guard = {}) {
  std::span<const int> s(&inst.s, 1), t(&inst.t, 1);
  CutFamily minimal =
      brute_minimal_cuts(inst.graph, s, t, inst.k, guard);
  std::int64_t best = -1;
  for (const auto& cut : minimal.cuts) {
    std::int64_t wt = inst.weight_of(cut);
    if (best < 0 || wt < best) best = wt;
  }
  ClosestFamilies result;
  result.all.origin = CutFamily::Origin::brute;
  for (const auto& cut : minimal.cuts) {
    if (inst.weight_of(cut) == best) result.all.add(cut);
  }
  result.closest = detail::closest_subfamily(inst.graph, inst.s, result.all);
  return result;
}

// F: all inclusion-minimal solutions of the chain instance (minimal st-cuts
// touching at most k paths). Requires a tight instance: solvable at k but
// not at k-1.
inline ClosestFamilies brute_closest_families_chain(
    const ChainInstance& inst, const SizeGuard& guard = {}) {
  if (!brute_solve_chain(inst, guard).has_value()) {
    throw ValidationError("chain instance is not solvable at k");
  }
  ChainInstance looser = inst;
  looser.k = inst.k - 1;
  if (brute_solve_chain(looser, guard).has_value()) {
    throw ValidationError("chain instance is already solvable at k-1");
  }
  std::span<const int> s(&inst.s, 1), t(&inst.t, 1);
  CutFamily minimal = brute_minimal_cuts(inst.graph, s, t,
                                         inst.graph.arc_count(), guard);
  ClosestFamilies result;
  result.all.origin = CutFamily::Origin::brute;
  for (const auto& cut : minimal.cuts) {
    int touched = 0;
    for (const auto& path : inst.paths) {
      bool hit = false;
      for (int id : path) {
        hit = hit || std::binary_search(cut.edges.begin(), cut.edges.end(), id);
      }
      if (hit) ++touched;
    }
    if (touched <= inst.k) result.all.add(cut);
  }
  result.closest = detail::closest_subfamily(inst.graph, inst.s, result.all);
  return result;
}

}  // namespace mbcut
