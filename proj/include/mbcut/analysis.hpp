#pragma once

// Structural probes over families of disjoint minimal st-cuts: mazes with
// their per-pair edge orientations, exhaustive bowtie and flower detection,
// and bound checks for closest-cut families. The detectors are exponential
// by design and guarded to desk scale; they exist to validate definitions
// and probe bounds, not to scale.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbcut/graph.hpp"
#include "mbcut/oracle.hpp"

namespace mbcut {

inline constexpr int kMaxMazeMembers = 10;
inline constexpr int kMaxBowtieLength = 5;
inline constexpr int kMaxFlowerRequest = 6;

// Orientation of a member edge toward another member: bottom when the edge's
// tail stays reachable from s after deleting the other cut, top otherwise.
enum class Orient { bottom, top };

// A family of pairwise disjoint equal-size sets with an orientation for
// every ordered member pair and element.
struct Maze {
  std::vector<CutSet> members;
  int element_count = 0;
  // f[u][v][i] orients members[u].edges[i] toward members[v]; u != v.
  std::vector<std::vector<std::vector<Orient>>> f;

  int size() const { return static_cast<int>(members.size()); }
};

// An ordered sub-sequence of maze members, each split so that earlier
// members see their a-part as bottom and later members see it as top.
struct Bowtie {
  std::vector<int> sequence;  // indices into maze.members
  std::vector<CutSet> a_parts;
  std::vector<CutSet> b_parts;
};

// Members that all orient a chosen element the same way toward every other
// member of the subset.
struct Flower {
  std::vector<int> members;  // indices into maze.members, ascending
  Orient zeta = Orient::bottom;
  std::vector<int> chosen;   // chosen[i] is an edge of maze member members[i]
};

inline Maze build_maze(const ColoredDigraph& g, int s, int t,
                       const CutFamily& family) {
  detail::require(s >= 1 && s <= g.vertex_count, "s out of range");
  detail::require(t >= 1 && t <= g.vertex_count, "t out of range");
  detail::require(s != t, "s and t must differ");
  const std::vector<int> xs{s};
  const std::vector<int> ys{t};
  Maze maze;
  maze.members = family.cuts;
  const int m = maze.size();
  for (int u = 0; u < m; ++u) {
    const CutSet& cut = maze.members[u];
    if (u == 0) {
      maze.element_count = cut.size();
    } else if (cut.size() != maze.element_count) {
      throw ValidationError("member " + std::to_string(u + 1) +
                            " has size " + std::to_string(cut.size()) +
                            ", expected " +
                            std::to_string(maze.element_count));
    }
    if (classify_cut(g, xs, ys, cut.to_set(g.arc_count())) !=
        CutClass::minimal) {
      throw ValidationError("member " + std::to_string(u + 1) +
                            " is not a minimal cut");
    }
    for (int v = 0; v < u; ++v) {
      for (int id : cut.edges) {
        if (maze.members[v].edges.end() !=
            std::find(maze.members[v].edges.begin(),
                      maze.members[v].edges.end(), id)) {
          throw ValidationError("members " + std::to_string(v + 1) + " and " +
                                std::to_string(u + 1) +
                                " are not pairwise disjoint");
        }
      }
    }
  }
  maze.f.assign(m, std::vector<std::vector<Orient>>(m));
  for (int v = 0; v < m; ++v) {
    EdgeSet removed = maze.members[v].to_set(g.arc_count());
    std::vector<char> reach =
        reachable_mask(g, std::span<const int>(&s, 1), &removed);
    for (int u = 0; u < m; ++u) {
      if (u == v) continue;
      maze.f[u][v].reserve(maze.members[u].size());
      for (int id : maze.members[u].edges) {
        maze.f[u][v].push_back(reach[g.arc(id).tail] ? Orient::bottom
                                                     : Orient::top);
      }
    }
  }
  return maze;
}

// A maze over element subsets of equal size; orientations carry over.
inline Maze restrict_maze(const Maze& maze,
                          const std::vector<std::vector<int>>& keep) {
  if (static_cast<int>(keep.size()) != maze.size()) {
    throw ValidationError("one kept-index list per member required");
  }
  Maze out;
  out.element_count = keep.empty() ? 0 : static_cast<int>(keep[0].size());
  for (int u = 0; u < maze.size(); ++u) {
    if (static_cast<int>(keep[u].size()) != out.element_count) {
      throw ValidationError("kept subsets must share one size");
    }
    std::vector<int> ids;
    for (int pos : keep[u]) {
      if (pos < 0 || pos >= maze.element_count) {
        throw ValidationError("kept index out of range");
      }
      ids.push_back(maze.members[u].edges[pos]);
    }
    out.members.push_back(CutSet::from_ids(std::move(ids)));
  }
  const int m = maze.size();
  out.f.assign(m, std::vector<std::vector<Orient>>(m));
  for (int u = 0; u < m; ++u) {
    for (int v = 0; v < m; ++v) {
      if (u == v) continue;
      for (int pos : keep[u]) out.f[u][v].push_back(maze.f[u][v][pos]);
    }
  }
  return out;
}

namespace detail {

inline Orient orient_of(const Maze& maze, int u, int v, int edge_id) {
  const auto& edges = maze.members[u].edges;
  auto it = std::find(edges.begin(), edges.end(), edge_id);
  if (it == edges.end()) {
    throw ValidationError("edge does not belong to the member");
  }
  return maze.f[u][v][it - edges.begin()];
}

}  // namespace detail

inline bool is_bowtie(const Maze& maze, const Bowtie& bowtie) {
  const int a = static_cast<int>(bowtie.sequence.size());
  if (static_cast<int>(bowtie.a_parts.size()) != a ||
      static_cast<int>(bowtie.b_parts.size()) != a) {
    return false;
  }
  for (int i = 0; i < a; ++i) {
    int u = bowtie.sequence[i];
    if (u < 0 || u >= maze.size()) return false;
    for (int j = 0; j < i; ++j) {
      if (bowtie.sequence[j] == u) return false;
    }
    // a_i and b_i must partition the member
    std::vector<int> merged = bowtie.a_parts[i].edges;
    merged.insert(merged.end(), bowtie.b_parts[i].edges.begin(),
                  bowtie.b_parts[i].edges.end());
    std::sort(merged.begin(), merged.end());
    if (merged != maze.members[u].edges) return false;
  }
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < a; ++j) {
      if (i == j) continue;
      int u = bowtie.sequence[i];
      int v = bowtie.sequence[j];
      Orient on_a = (i < j) ? Orient::bottom : Orient::top;
      Orient on_b = (i < j) ? Orient::top : Orient::bottom;
      for (int e : bowtie.a_parts[i].edges) {
        if (detail::orient_of(maze, u, v, e) != on_a) return false;
      }
      for (int e : bowtie.b_parts[i].edges) {
        if (detail::orient_of(maze, u, v, e) != on_b) return false;
      }
    }
  }
  return true;
}

inline bool is_flower(const Maze& maze, const Flower& flower) {
  const int n = static_cast<int>(flower.members.size());
  if (static_cast<int>(flower.chosen.size()) != n) return false;
  for (int i = 0; i < n; ++i) {
    int u = flower.members[i];
    if (u < 0 || u >= maze.size()) return false;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (flower.members[j] == u) return false;
      if (detail::orient_of(maze, u, flower.members[j], flower.chosen[i]) !=
          flower.zeta) {
        return false;
      }
    }
    if (!std::binary_search(maze.members[u].edges.begin(),
                            maze.members[u].edges.end(), flower.chosen[i])) {
      return false;
    }
  }
  return true;
}

namespace detail {

// The partition of each member in an ordered candidate sequence is forced:
// the first other member decides, all remaining pairs only verify.
inline std::optional<Bowtie> forced_bowtie(const Maze& maze,
                                           const std::vector<int>& seq) {
  const int a = static_cast<int>(seq.size());
  Bowtie bowtie;
  bowtie.sequence = seq;
  for (int i = 0; i < a; ++i) {
    std::vector<int> a_ids, b_ids;
    for (int pos = 0; pos < maze.element_count; ++pos) {
      int witness = (i == 0) ? 1 : 0;
      Orient seen = maze.f[seq[i]][seq[witness]][pos];
      bool in_a = (i < witness) ? (seen == Orient::bottom)
                                : (seen == Orient::top);
      for (int j = 0; j < a; ++j) {
        if (j == i || j == witness) continue;
        Orient o = maze.f[seq[i]][seq[j]][pos];
        bool agrees = (i < j) ? (o == (in_a ? Orient::bottom : Orient::top))
                              : (o == (in_a ? Orient::top : Orient::bottom));
        if (!agrees) return std::nullopt;
      }
      (in_a ? a_ids : b_ids).push_back(maze.members[seq[i]].edges[pos]);
    }
    bowtie.a_parts.push_back(CutSet::from_ids(std::move(a_ids)));
    bowtie.b_parts.push_back(CutSet::from_ids(std::move(b_ids)));
  }
  return bowtie;
}

inline void combinations(int n, int r,
                         const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    if (fn(idx)) return;
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

// First a-bowtie in canonical order (member combinations ascending, then
// permutations), or nothing. The reversed swapped bowtie is re-verified as a
// consistency check.
inline std::optional<Bowtie> find_bowtie(const Maze& maze, int a) {
  if (a < 2) throw ValidationError("bowtie length must be >= 2");
  if (a > kMaxBowtieLength) {
    throw GuardError("bowtie length exceeds the search guard of " +
                     std::to_string(kMaxBowtieLength));
  }
  if (maze.size() > kMaxMazeMembers) {
    throw GuardError("maze exceeds the search guard of " +
                     std::to_string(kMaxMazeMembers) + " members");
  }
  if (a > maze.size()) return std::nullopt;
  std::optional<Bowtie> found;
  detail::combinations(maze.size(), a, [&](const std::vector<int>& combo) {
    std::vector<int> seq = combo;
    do {
      if (auto bowtie = detail::forced_bowtie(maze, seq)) {
        found = std::move(bowtie);
        return true;
      }
    } while (std::next_permutation(seq.begin(), seq.end()));
    return false;
  });
  if (found.has_value()) {
    Bowtie reversed;
    reversed.sequence.assign(found->sequence.rbegin(),
                             found->sequence.rend());
    reversed.a_parts.assign(found->b_parts.rbegin(), found->b_parts.rend());
    reversed.b_parts.assign(found->a_parts.rbegin(), found->a_parts.rend());
    if (!is_bowtie(maze, *found) || !is_bowtie(maze, reversed)) {
      throw InternalError("bowtie failed its reversal identity");
    }
  }
  return found;
}

// Largest flower of size at least b, preferring bottom orientation and
// lexicographic member choice; within a member the smallest feasible element
// is chosen.
inline std::optional<Flower> find_flower(const Maze& maze, int b) {
  if (b < 1) throw ValidationError("flower size must be >= 1");
  if (b > kMaxFlowerRequest) {
    throw GuardError("flower size exceeds the search guard of " +
                     std::to_string(kMaxFlowerRequest));
  }
  if (maze.size() > kMaxMazeMembers) {
    throw GuardError("maze exceeds the search guard of " +
                     std::to_string(kMaxMazeMembers) + " members");
  }
  for (int size = maze.size(); size >= b; --size) {
    for (Orient zeta : {Orient::bottom, Orient::top}) {
      std::optional<Flower> found;
      detail::combinations(
          maze.size(), size, [&](const std::vector<int>& combo) {
            Flower flower;
            flower.members = combo;
            flower.zeta = zeta;
            for (int u : combo) {
              int pick = -1;
              for (int pos = 0; pos < maze.element_count && pick < 0; ++pos) {
                bool ok = true;
                for (int v : combo) {
                  if (v != u && maze.f[u][v][pos] != zeta) {
                    ok = false;
                    break;
                  }
                }
                if (ok) pick = maze.members[u].edges[pos];
              }
              if (pick < 0) return false;
              flower.chosen.push_back(pick);
            }
            found = std::move(flower);
            return true;
          });
      if (found.has_value()) return found;
    }
  }
  return std::nullopt;
}

// Recomputes the reachability characterization of a bowtie found on a maze
// that was built from a graph: the a-part of an earlier member must be
// exactly its edges with s-reachable tails after deleting any later member,
// and symmetrically for b-parts.
inline bool verify_bowtie_reachability(const ColoredDigraph& g, int s,
                                       const Maze& maze,
                                       const Bowtie& bowtie) {
  const int a = static_cast<int>(bowtie.sequence.size());
  for (int j = 0; j < a; ++j) {
    EdgeSet removed =
        maze.members[bowtie.sequence[j]].to_set(g.arc_count());
    std::vector<char> reach =
        reachable_mask(g, std::span<const int>(&s, 1), &removed);
    for (int i = 0; i < a; ++i) {
      if (i == j) continue;
      const CutSet& reachable_part =
          (i < j) ? bowtie.a_parts[i] : bowtie.b_parts[i];
      CutSet actual;
      for (int id : maze.members[bowtie.sequence[i]].edges) {
        if (reach[g.arc(id).tail]) actual.edges.push_back(id);
      }
      if (!(actual == reachable_part)) return false;
    }
  }
  return true;
}

struct BoundReport {
  int k = 0;
  int family_size = 0;
  int bowtie_limit = 0;
  int largest_bowtie = 0;
  std::int64_t flower_limit = 0;
  int largest_flower = 0;
  bool bowtie_search_vacuous = false;  // limit above the search guard
  bool pass = true;
  std::string detail;
};

namespace detail {

inline std::int64_t flower_bound(int k) {
  std::int64_t b = k + 1;
  for (int i = 0; i < k + 1; ++i) b *= 4;
  return b;
}

// All maximal pairwise-disjoint subsets of `indices`, each emitted once.
inline std::vector<std::vector<int>> maximal_disjoint_subsets(
    const std::vector<CutSet>& cuts, const std::vector<int>& indices) {
  const int n = static_cast<int>(indices.size());
  std::vector<std::vector<char>> ok(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& a = cuts[indices[i]].edges;
      const auto& b = cuts[indices[j]].edges;
      std::vector<int> shared;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::back_inserter(shared));
      ok[i][j] = ok[j][i] = shared.empty();
    }
  }
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::int64_t visited = 0;
  auto compatible = [&](int cand) {
    for (int c : current) {
      if (!ok[c][cand]) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int start) -> void {
    if (++visited > 100000) {
      throw GuardError("family too entangled to scan for disjoint subsets");
    }
    bool maximal = true;
    for (int cand = 0; cand < n; ++cand) {
      if (std::find(current.begin(), current.end(), cand) == current.end() &&
          compatible(cand)) {
        maximal = false;
        break;
      }
    }
    if (maximal && !current.empty()) {
      std::vector<int> subset;
      for (int c : current) subset.push_back(indices[c]);
      out.push_back(std::move(subset));
    }
    for (int cand = start; cand < n; ++cand) {
      if (!compatible(cand)) continue;
      current.push_back(cand);
      self(self, cand + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Scans every maximal disjoint equal-size subfamily for its largest flower
// and largest bowtie up to the search guard.
inline void scan_subfamilies(const ColoredDigraph& g, int s, int t,
                             const CutFamily& family, BoundReport& report) {
  std::map<int, std::vector<int>> by_size;
  for (std::size_t i = 0; i < family.cuts.size(); ++i) {
    by_size[static_cast<int>(family.cuts[i].size())].push_back(
        static_cast<int>(i));
  }
  for (const auto& [size, indices] : by_size) {
    if (size == 0) continue;
    for (const std::vector<int>& subset :
         maximal_disjoint_subsets(family.cuts, indices)) {
      if (static_cast<int>(subset.size()) > kMaxMazeMembers) {
        throw GuardError("a disjoint subfamily exceeds the maze guard");
      }
      CutFamily sub;
      for (int idx : subset) sub.cuts.push_back(family.cuts[idx]);
      Maze maze = build_maze(g, s, t, sub);
      if (auto flower = find_flower(maze, 1)) {
        int found = static_cast<int>(flower->members.size());
        if (found > report.largest_flower) {
          report.largest_flower = found;
          report.flower_limit = flower_bound(size);
        }
      }
      for (int a = std::min<int>(kMaxBowtieLength, maze.size()); a >= 2;
           --a) {
        if (a <= report.largest_bowtie) break;
        if (auto bowtie = find_bowtie(maze, a)) {
          if (!verify_bowtie_reachability(g, s, maze, *bowtie)) {
            throw InternalError(
                "maze bowtie disagrees with its reachability form");
          }
          report.largest_bowtie = a;
          break;
        }
      }
    }
  }
}

}  // namespace detail

// Checks a closest family of a weighted instance: bowties are bounded by
// (k+2 choose 2) and flowers by the anti-isolation bound for their size
// class.
inline BoundReport check_bounds_weighted(const WeightedCutInstance& inst,
                                         const CutFamily& closest) {
  inst.validate();
  BoundReport report;
  report.k = inst.k;
  report.family_size = static_cast<int>(closest.size());
  report.bowtie_limit = (inst.k + 2) * (inst.k + 1) / 2;
  report.flower_limit = detail::flower_bound(inst.k);
  report.bowtie_search_vacuous = report.bowtie_limit >= kMaxBowtieLength;
  detail::scan_subfamilies(inst.graph, inst.s, inst.t, closest, report);
  if (report.largest_bowtie > report.bowtie_limit) {
    report.pass = false;
    report.detail = "found a " + std::to_string(report.largest_bowtie) +
                    "-bowtie above the limit of " +
                    std::to_string(report.bowtie_limit);
  }
  if (report.largest_flower > report.flower_limit) {
    report.pass = false;
    report.detail += std::string(report.detail.empty() ? "" : "; ") +
                     "found a flower of size " +
                     std::to_string(report.largest_flower) +
                     " above the limit of " +
                     std::to_string(report.flower_limit);
  }
  return report;
}

// Checks a closest family of a chain instance: no 4-bowtie may exist whose
// members touch pairwise disjoint path sets, and flowers obey the
// anti-isolation bound.
inline BoundReport check_bounds_chain(const ChainInstance& inst,
                                      const CutFamily& closest) {
  inst.validate();
  BoundReport report;
  report.k = inst.k;
  report.family_size = static_cast<int>(closest.size());
  report.bowtie_limit = 3;  // a path-disjoint 4-bowtie would be a violation
  report.flower_limit = detail::flower_bound(inst.k);
  detail::scan_subfamilies(inst.graph, inst.s, inst.t, closest, report);

  // path-disjointness: every input path meets at most one member
  std::vector<std::vector<int>> touched(closest.size());
  for (std::size_t i = 0; i < closest.cuts.size(); ++i) {
    const auto& edges = closest.cuts[i].edges;
    for (std::size_t p = 0; p < inst.paths.size(); ++p) {
      for (int id : inst.paths[p]) {
        if (std::binary_search(edges.begin(), edges.end(), id)) {
          touched[i].push_back(static_cast<int>(p));
          break;
        }
      }
    }
  }
  std::map<int, std::vector<int>> by_size;
  for (std::size_t i = 0; i < closest.cuts.size(); ++i) {
    by_size[static_cast<int>(closest.cuts[i].size())].push_back(
        static_cast<int>(i));
  }
  for (const auto& [size, indices] : by_size) {
    if (static_cast<int>(indices.size()) < 4 || size == 0) continue;
    detail::combinations(
        static_cast<int>(indices.size()), 4,
        [&](const std::vector<int>& combo) {
          std::vector<int> subset;
          std::vector<int> seen_paths;
          for (int c : combo) subset.push_back(indices[c]);
          for (int idx : subset) {
            for (int p : touched[idx]) {
              if (std::find(seen_paths.begin(), seen_paths.end(), p) !=
                  seen_paths.end()) {
                return false;  // two members share a path
              }
              seen_paths.push_back(p);
            }
          }
          for (std::size_t i = 0; i < subset.size(); ++i) {
            for (std::size_t j = i + 1; j < subset.size(); ++j) {
              const auto& a = closest.cuts[subset[i]].edges;
              const auto& b = closest.cuts[subset[j]].edges;
              std::vector<int> shared;
              std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                    std::back_inserter(shared));
              if (!shared.empty()) return false;
            }
          }
          CutFamily sub;
          for (int idx : subset) sub.cuts.push_back(closest.cuts[idx]);
          Maze maze = build_maze(inst.graph, inst.s, inst.t, sub);
          if (find_bowtie(maze, 4).has_value()) {
            report.pass = false;
            report.largest_bowtie = std::max(report.largest_bowtie, 4);
            report.detail =
                "found a path-disjoint 4-bowtie in the closest family";
            return true;
          }
          return false;
        });
    if (!report.pass) break;
  }
  if (report.largest_flower > report.flower_limit) {
    report.pass = false;
    report.detail += std::string(report.detail.empty() ? "" : "; ") +
                     "found a flower of size " +
                     std::to_string(report.largest_flower) +
                     " above the limit of " +
                     std::to_string(report.flower_limit);
  }
  return report;
}

}  // namespace mbcut
