#pragma once

// Ordered multicut and feedback arc sets.
//
// solve_skew deletes colored arcs so that no s_i can reach any t_j with
// i >= j. Every yes-instance has a solution containing an important
// budget-respecting cut between s_q and {t_1, ..., t_q}, so the solver
// branches over the enumerated candidate family, deletes the chosen cut and
// lowers the budgets; the total budget drops by at least one per level.
//
// A pair whose source reaches no terminal at all is dropped, and the
// vertices visited by that search are deleted: none of them can lie on any
// source-to-terminal path. Sources of remaining pairs and the dropped
// pair's own target stay in the graph; the target may still serve as an
// intermediate vertex of other paths.
//
// solve_dfas reduces feedback arc set questions to skew multicut: a feedback
// vertex set W is extracted from a classic (uncolored) solution, and for
// every permutation of W each w is split into a source/target pair, joined
// by an uncuttable back arc. classic_dfas itself runs iterative compression
// over prefixes of the arc list, using the same machinery with one color.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "mbcut/graph.hpp"
#include "mbcut/important.hpp"
#include "mbcut/oracle.hpp"

namespace mbcut {

// Subgraph after deleting vertices and arcs. Kept vertices are renumbered
// in ascending order; kept arcs preserve their relative order.
struct InducedSubgraph {
  ColoredDigraph graph;
  std::vector<int> orig_arc_id;     // index 1..m' -> original arc id
  std::vector<int> orig_vertex_id;  // index 1..n' -> original vertex id
  std::vector<int> new_vertex_id;   // original vertex id -> new id, 0 if gone
};

inline InducedSubgraph induce_without(const ColoredDigraph& g,
                                      const std::vector<char>& drop_vertex,
                                      const EdgeSet& drop_arcs) {
  if (static_cast<int>(drop_vertex.size()) != g.vertex_count + 1) {
    throw ValidationError("vertex drop mask has the wrong length");
  }
  InducedSubgraph sub;
  sub.orig_vertex_id.assign(1, 0);
  sub.new_vertex_id.assign(g.vertex_count + 1, 0);
  for (int v = 1; v <= g.vertex_count; ++v) {
    if (drop_vertex[v]) continue;
    sub.orig_vertex_id.push_back(v);
    sub.new_vertex_id[v] = static_cast<int>(sub.orig_vertex_id.size()) - 1;
  }
  std::vector<Arc> arcs;
  sub.orig_arc_id.assign(1, 0);
  for (int id = 1; id <= g.arc_count(); ++id) {
    if (drop_arcs.contains(id)) continue;
    const Arc& a = g.arc(id);
    if (drop_vertex[a.tail] || drop_vertex[a.head]) continue;
    arcs.push_back(
        {sub.new_vertex_id[a.tail], sub.new_vertex_id[a.head], a.colors});
    sub.orig_arc_id.push_back(id);
  }
  sub.graph =
      ColoredDigraph(static_cast<int>(sub.orig_vertex_id.size()) - 1,
                     g.color_count, std::move(arcs));
  return sub;
}

namespace detail {

struct SkewFrame {
  ColoredDigraph graph;
  Budgets budgets;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> arc_map;  // current arc id -> arc id of the input graph
};

inline std::optional<std::vector<int>> solve_skew_rec(SkewFrame frame,
                                                      int depth,
                                                      int depth_limit) {
  if (depth > depth_limit) {
    throw InternalError("ordered multicut recursion exceeded its budget");
  }
  for (int b : frame.budgets.values) {
    if (b < 0) return std::nullopt;
  }

  // Prune source-by-source until some terminal is reachable from the last
  // source, or no pairs remain.
  std::vector<char> visited;
  while (true) {
    if (frame.pairs.empty()) return std::vector<int>{};
    const int q = static_cast<int>(frame.pairs.size());
    // a source that coincides with an equal-or-earlier target is an
    // uncuttable zero-length path
    for (int i = 0; i < q; ++i) {
      for (int j = 0; j <= i; ++j) {
        if (frame.pairs[i].first == frame.pairs[j].second) {
          return std::nullopt;
        }
      }
    }
    int sq = frame.pairs[q - 1].first;
    visited = reachable_mask(frame.graph, std::span<const int>(&sq, 1));
    bool terminal_reached = false;
    for (const auto& [s, t] : frame.pairs) {
      if (visited[t]) {
        terminal_reached = true;
        break;
      }
    }
    if (terminal_reached) break;

    std::vector<char> drop = visited;
    for (int i = 0; i + 1 < q; ++i) drop[frame.pairs[i].first] = 0;
    frame.pairs.pop_back();
    InducedSubgraph sub =
        induce_without(frame.graph, drop, EdgeSet(frame.graph.arc_count()));
    for (auto& [s, t] : frame.pairs) {
      s = sub.new_vertex_id[s];
      t = sub.new_vertex_id[t];
      if (s == 0 || t == 0) {
        throw InternalError("pruning removed a terminal of a live pair");
      }
    }
    std::vector<int> composed(sub.orig_arc_id.size(), 0);
    for (std::size_t i = 1; i < sub.orig_arc_id.size(); ++i) {
      composed[i] = frame.arc_map[sub.orig_arc_id[i]];
    }
    frame.graph = std::move(sub.graph);
    frame.arc_map = std::move(composed);
  }

  // Branch over candidate cuts between the last source and all targets.
  const int q = static_cast<int>(frame.pairs.size());
  std::vector<int> x{frame.pairs[q - 1].first};
  std::vector<int> y;
  for (const auto& [s, t] : frame.pairs) y.push_back(t);
  std::sort(y.begin(), y.end());
  y.erase(std::unique(y.begin(), y.end()), y.end());

  CutInstance cut_inst{frame.graph, std::move(x), std::move(y),
                       frame.budgets};
  CutFamily family = enumerate_candidates(cut_inst);
  for (const CutSet& d : family.cuts) {
    if (d.empty()) {
      throw InternalError("empty cut enumerated while a terminal is in reach");
    }
    BudgetUsage usage = budget_usage(frame.graph, d, frame.budgets);
    SkewFrame child;
    std::vector<char> drop_none(frame.graph.vertex_count + 1, 0);
    InducedSubgraph sub = induce_without(
        frame.graph, drop_none, d.to_set(frame.graph.arc_count()));
    child.graph = std::move(sub.graph);
    child.budgets = frame.budgets;
    for (std::size_t i = 0; i < usage.usage.size(); ++i) {
      child.budgets.values[i] -= usage.usage[i];
    }
    child.pairs = frame.pairs;
    child.arc_map.assign(sub.orig_arc_id.size(), 0);
    for (std::size_t i = 1; i < sub.orig_arc_id.size(); ++i) {
      child.arc_map[i] = frame.arc_map[sub.orig_arc_id[i]];
    }
    auto rest = solve_skew_rec(std::move(child), depth + 1, depth_limit);
    if (rest.has_value()) {
      std::vector<int> witness = std::move(*rest);
      for (int id : d.edges) witness.push_back(frame.arc_map[id]);
      return witness;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Returns a budget-respecting arc set whose deletion removes every directed
// path from s_i to t_j with i >= j, or nothing if none exists.
inline std::optional<CutSet> solve_skew(const SkewInstance& inst,
                                        bool validate = true) {
  inst.validate(validate);
  for (int b : inst.budgets.values) {
    if (b < 0) return std::nullopt;
  }
  detail::SkewFrame root;
  root.graph = inst.graph;
  root.budgets = inst.budgets;
  root.pairs = inst.pairs;
  root.arc_map.resize(inst.graph.arc_count() + 1);
  for (int id = 0; id <= inst.graph.arc_count(); ++id) root.arc_map[id] = id;
  auto witness = detail::solve_skew_rec(std::move(root), 1,
                                        inst.budgets.total() + 2);
  if (!witness.has_value()) return std::nullopt;
  return CutSet::from_ids(std::move(*witness));
}

// An ordered multicut instance derived from a feedback-arc-set graph and a
// permutation of split vertices. Vertex w keeps its id and acts as the
// source of its pair; the matching target is a fresh vertex. Real arcs keep
// their ids and colors; the appended back arcs are uncuttable.
struct SkewDerivation {
  SkewInstance skew;
  int real_arc_count = 0;
  std::vector<int> split;  // split[i] = original vertex of pair i+1
};

inline SkewDerivation dfas_to_skew(const ColoredDigraph& g,
                                   const Budgets& budgets,
                                   const std::vector<int>& perm) {
  const int n = g.vertex_count;
  const int r = static_cast<int>(perm.size());
  std::vector<int> pair_of(n + 1, 0);
  for (int i = 0; i < r; ++i) {
    int w = perm[i];
    if (w < 1 || w > n) throw ValidationError("split vertex out of range");
    if (pair_of[w] != 0) throw ValidationError("split vertex listed twice");
    pair_of[w] = i + 1;
  }
  std::vector<Arc> arcs;
  arcs.reserve(g.arc_count() + r);
  for (int id = 1; id <= g.arc_count(); ++id) {
    Arc a = g.arc(id);
    if (pair_of[a.head] != 0) a.head = n + pair_of[a.head];
    arcs.push_back(a);
  }
  for (int i = 1; i <= r; ++i) {
    arcs.push_back({n + i, perm[i - 1], 0});
  }
  SkewDerivation out;
  out.real_arc_count = g.arc_count();
  out.split = perm;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= r; ++i) pairs.emplace_back(perm[i - 1], n + i);
  out.skew = SkewInstance{ColoredDigraph(n + r, g.color_count, std::move(arcs)),
                          budgets, std::move(pairs)};
  return out;
}

namespace detail {

// Maps a witness of a derived ordered multicut back to the original arcs.
// Back arcs are uncuttable, so every witness arc is a real one.
inline CutSet map_skew_witness(const SkewDerivation& derivation,
                               const CutSet& witness) {
  for (int id : witness.edges) {
    if (id > derivation.real_arc_count) {
      throw InternalError("derived multicut deleted a synthetic back arc");
    }
  }
  return witness;
}

inline std::optional<CutSet> dfas_via_permutations(const ColoredDigraph& g,
                                                   const Budgets& budgets,
                                                   std::vector<int> w) {
  std::sort(w.begin(), w.end());
  do {
    SkewDerivation derivation = dfas_to_skew(g, budgets, w);
    auto witness = solve_skew(derivation.skew, false);
    if (witness.has_value()) {
      return detail::map_skew_witness(derivation, *witness);
    }
  } while (std::next_permutation(w.begin(), w.end()));
  return std::nullopt;
}

}  // namespace detail

// Feedback arc set of size at most k, ignoring colors and budgets: every arc
// counts as deletable. Iterative compression over prefixes of the arc list.
inline std::optional<std::vector<int>> classic_dfas(const ColoredDigraph& g,
                                                    int k) {
  if (k < 0) return std::nullopt;
  std::vector<int> solution;
  std::vector<Arc> prefix;
  for (int id = 1; id <= g.arc_count(); ++id) {
    prefix.push_back(g.arc(id));
    prefix.back().colors = color_bit(1);
    solution.push_back(id);
    if (static_cast<int>(solution.size()) <= k) continue;

    // compress: the heads of the k+1 arcs hit every cycle of the prefix
    ColoredDigraph sub(g.vertex_count, 1, prefix);
    std::vector<int> w;
    for (int sid : solution) w.push_back(sub.arc(sid).head);
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    auto compressed =
        detail::dfas_via_permutations(sub, Budgets{{k}}, std::move(w));
    if (!compressed.has_value()) return std::nullopt;
    solution = compressed->edges;
  }
  return solution;
}

// Budget-respecting feedback arc set, or nothing. A classic solution first
// bounds a feedback vertex set W; the topological order of any solution
// restricted to W is then guessed as a permutation.
inline std::optional<CutSet> solve_dfas(const DfasInstance& inst,
                                        bool validate = true) {
  inst.validate(validate);
  for (int b : inst.budgets.values) {
    if (b < 0) return std::nullopt;
  }
  const int k = inst.budgets.total();
  auto classic = classic_dfas(inst.graph, k);
  if (!classic.has_value()) return std::nullopt;
  std::vector<int> w;
  for (int id : *classic) w.push_back(inst.graph.arc(id).head);
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  if (w.empty()) return CutSet{};
  return detail::dfas_via_permutations(inst.graph, inst.budgets,
                                       std::move(w));
}

}  // namespace mbcut
