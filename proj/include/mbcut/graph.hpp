#pragma once

// Core graph types shared by every solver in this library.
//
// Conventions, used consistently everywhere:
//   * vertices are dense identifiers 1..n, arcs are 1..m in input order;
//   * an arc carries a set of colors encoded as a 64-bit mask over colors
//     1..num_colors (so at most 64 color classes per instance);
//   * color classes may overlap and arcs may be colorless; colorless arcs can
//     never be deleted by a cut;
//   * parallel arcs and self-loops are legal. Self-loops are irrelevant for
//     reachability cuts and only matter as length-1 cycles;
//   * all iteration is in ascending id order, which makes every algorithm in
//     the library deterministic.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mbcut {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: bad identifiers, violated instance invariants.
struct ValidationError : Error {
  using Error::Error;
};

// A brute-force or analysis routine refused to run because the instance
// exceeds its configured size guard.
struct GuardError : Error {
  using Error::Error;
};

// An internal consistency check failed; indicates a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

using ColorMask = std::uint64_t;
inline constexpr int kMaxColors = 64;

struct Arc {
  int tail = 0;
  int head = 0;
  ColorMask colors = 0;

  bool operator==(const Arc&) const = default;
};

inline ColorMask color_bit(int color) { return ColorMask{1} << (color - 1); }

// Bitset over arc identifiers 1..m.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(int arc_count)
      : size_(arc_count), bits_((arc_count + 64) / 64, 0) {}

  static EdgeSet from_ids(int arc_count, std::span<const int> ids) {
    EdgeSet s(arc_count);
    for (int id : ids) s.insert(id);
    return s;
  }
  static EdgeSet from_ids(int arc_count, std::initializer_list<int> ids) {
    return from_ids(arc_count, std::span<const int>(ids.begin(), ids.size()));
  }

  int universe_size() const { return size_; }

  void insert(int id) {
    check(id);
    bits_[(id - 1) >> 6] |= std::uint64_t{1} << ((id - 1) & 63);
  }
  void erase(int id) {
    check(id);
    bits_[(id - 1) >> 6] &= ~(std::uint64_t{1} << ((id - 1) & 63));
  }
  bool contains(int id) const {
    if (id < 1 || id > size_) return false;
    return (bits_[(id - 1) >> 6] >> ((id - 1) & 63)) & 1;
  }

  int count() const {
    int c = 0;
    for (auto w : bits_) c += __builtin_popcountll(w);
    return c;
  }
  bool empty() const {
    for (auto w : bits_) {
      if (w) return false;
    }
    return true;
  }

  std::vector<int> ids() const {
    std::vector<int> out;
    out.reserve(count());
    for (int id = 1; id <= size_; ++id) {
      if (contains(id)) out.push_back(id);
    }
    return out;
  }

  bool operator==(const EdgeSet&) const = default;

 private:
  void check(int id) const {
    if (id < 1 || id > size_) {
      throw ValidationError("arc id " + std::to_string(id) +
                            " out of range 1.." + std::to_string(size_));
    }
  }

  int size_ = 0;
  std::vector<std::uint64_t> bits_;
};

// A cut is stored as its sorted list of arc identifiers; per-color usage is
// always recomputed from the graph, never stored.
struct CutSet {
  std::vector<int> edges;  // ascending, unique

  static CutSet from_ids(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return CutSet{std::move(ids)};
  }
  static CutSet from_set(const EdgeSet& s) { return CutSet{s.ids()}; }

  EdgeSet to_set(int arc_count) const {
    return EdgeSet::from_ids(arc_count, edges);
  }

  int size() const { return static_cast<int>(edges.size()); }
  bool empty() const { return edges.empty(); }

  bool operator==(const CutSet&) const = default;
  auto operator<=>(const CutSet&) const = default;
};

// A deduplicated, lexicographically sorted family of cuts.
struct CutFamily {
  enum class Origin { enumerated, brute, filtered };

  std::vector<CutSet> cuts;
  Origin origin = Origin::enumerated;
  // True when importance filtering was run only within the family itself
  // rather than against the full universe of minimal respecting cuts.
  bool relative_filter = false;

  int size() const { return static_cast<int>(cuts.size()); }
  bool contains(const CutSet& c) const {
    return std::binary_search(cuts.begin(), cuts.end(), c);
  }
  void add(CutSet c) {
    auto it = std::lower_bound(cuts.begin(), cuts.end(), c);
    if (it == cuts.end() || !(*it == c)) cuts.insert(it, std::move(c));
  }
};

struct ColoredDigraph {
  int vertex_count = 0;
  int color_count = 0;
  std::vector<Arc> arcs;               // arcs[i] has id i+1
  std::vector<std::vector<int>> out;   // out[v]: arc ids leaving v, ascending
  std::vector<std::vector<int>> in;    // in[v]: arc ids entering v, ascending

  ColoredDigraph() = default;
  ColoredDigraph(int n, int colors, std::vector<Arc> arc_list)
      : vertex_count(n), color_count(colors), arcs(std::move(arc_list)) {
    if (n < 0) throw ValidationError("negative vertex count");
    if (colors < 0 || colors > kMaxColors) {
      throw ValidationError("color count must be within 0.." +
                            std::to_string(kMaxColors));
    }
    const ColorMask allowed =
        colors == 64 ? ~ColorMask{0} : (ColorMask{1} << colors) - 1;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const Arc& a = arcs[i];
      if (a.tail < 1 || a.tail > n || a.head < 1 || a.head > n) {
        throw ValidationError("arc " + std::to_string(i + 1) +
                              " has endpoint outside 1.." + std::to_string(n));
      }
      if (a.colors & ~allowed) {
        throw ValidationError("arc " + std::to_string(i + 1) +
                              " uses a color above " + std::to_string(colors));
      }
    }
    rebuild_adjacency();
  }

  void rebuild_adjacency() {
    out.assign(vertex_count + 1, {});
    in.assign(vertex_count + 1, {});
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      out[arcs[i].tail].push_back(static_cast<int>(i + 1));
      in[arcs[i].head].push_back(static_cast<int>(i + 1));
    }
  }

  int arc_count() const { return static_cast<int>(arcs.size()); }
  const Arc& arc(int id) const {
    if (id < 1 || id > arc_count()) {
      throw ValidationError("arc id " + std::to_string(id) +
                            " out of range 1.." + std::to_string(arc_count()));
    }
    return arcs[id - 1];
  }

  bool has_color(int id, int color) const {
    return (arc(id).colors & color_bit(color)) != 0;
  }

  // All arcs carrying at least one color; the only deletable arcs.
  EdgeSet colored_arcs() const {
    EdgeSet s(arc_count());
    for (int id = 1; id <= arc_count(); ++id) {
      if (arc(id).colors) s.insert(id);
    }
    return s;
  }

  bool operator==(const ColoredDigraph& o) const {
    return vertex_count == o.vertex_count && color_count == o.color_count &&
           arcs == o.arcs;
  }
};

struct Budgets {
  std::vector<int> values;  // values[i] is the budget of color i+1

  int color_count() const { return static_cast<int>(values.size()); }
  int total() const {
    int t = 0;
    for (int v : values) t += v;
    return t;
  }

  bool operator==(const Budgets&) const = default;
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

inline void check_vertex_list(const std::vector<int>& vs, int n,
                              const std::string& what) {
  require(!vs.empty(), what + " set must be nonempty");
  require(std::is_sorted(vs.begin(), vs.end()) &&
              std::adjacent_find(vs.begin(), vs.end()) == vs.end(),
          what + " set must be sorted and duplicate-free");
  for (int v : vs) {
    require(v >= 1 && v <= n, what + " vertex " + std::to_string(v) +
                                  " out of range 1.." + std::to_string(n));
  }
}

inline void check_budgets(const Budgets& b, int colors, bool require_positive) {
  require(b.color_count() == colors,
          "budget list length must equal the color count");
  for (int v : b.values) {
    if (require_positive) {
      require(v >= 1, "top-level budgets must be at least 1");
    }
  }
}

}  // namespace detail

// Reachability instance: cut every directed path from X to Y by deleting
// colored arcs, at most k_i of each color.
struct CutInstance {
  ColoredDigraph graph;
  std::vector<int> x;  // sorted, unique, nonempty
  std::vector<int> y;  // sorted, unique, nonempty, disjoint from x
  Budgets budgets;

  // Top-level instances require every budget >= 1; recursive calls inside the
  // solvers legitimately shrink budgets to 0.
  void validate(bool top_level = true) const {
    detail::check_vertex_list(x, graph.vertex_count, "x");
    detail::check_vertex_list(y, graph.vertex_count, "y");
    std::vector<int> both;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                          std::back_inserter(both));
    detail::require(both.empty(), "x and y sets must be disjoint");
    detail::check_budgets(budgets, graph.color_count, top_level);
  }

  bool operator==(const CutInstance&) const = default;
};

// Ordered terminal pairs (s_i, t_i), i = 1..q; a solution deletes colored
// arcs so that no s_i can reach any t_j with i >= j.
struct SkewInstance {
  ColoredDigraph graph;
  Budgets budgets;
  std::vector<std::pair<int, int>> pairs;  // pairs[i-1] = (s_i, t_i)

  void validate(bool top_level = true) const {
    for (auto [s, t] : pairs) {
      detail::require(s >= 1 && s <= graph.vertex_count && t >= 1 &&
                          t <= graph.vertex_count,
                      "terminal pair vertex out of range");
    }
    detail::check_budgets(budgets, graph.color_count, top_level);
  }

  bool operator==(const SkewInstance&) const = default;
};

// Delete colored arcs, at most k_i per color, so the graph becomes acyclic.
struct DfasInstance {
  ColoredDigraph graph;
  Budgets budgets;

  void validate(bool top_level = true) const {
    detail::check_budgets(budgets, graph.color_count, top_level);
  }

  bool operator==(const DfasInstance&) const = default;
};

// Colorless graph whose arc set is partitioned into short directed paths;
// a solution is an st-cut touching at most k of the paths.
struct ChainInstance {
  ColoredDigraph graph;  // color_count == 0
  int s = 0;
  int t = 0;
  std::vector<std::vector<int>> paths;  // arc ids; partition of all arcs
  int path_length_bound = 0;
  int k = 0;

  void validate() const {
    detail::require(graph.color_count == 0, "chain graphs are colorless");
    detail::require(s >= 1 && s <= graph.vertex_count, "s out of range");
    detail::require(t >= 1 && t <= graph.vertex_count, "t out of range");
    detail::require(s != t, "s and t must differ");
    detail::require(path_length_bound >= 1, "path length bound must be >= 1");
    detail::require(k >= 0, "k must be nonnegative");
    std::vector<char> seen(graph.arc_count() + 1, 0);
    for (const auto& p : paths) {
      detail::require(!p.empty(), "empty path in partition");
      detail::require(static_cast<int>(p.size()) <= path_length_bound,
                      "path longer than the declared bound");
      std::vector<int> visited;
      for (std::size_t i = 0; i < p.size(); ++i) {
        int id = p[i];
        detail::require(id >= 1 && id <= graph.arc_count(),
                        "path arc id out of range");
        detail::require(!seen[id], "arc appears in two paths");
        seen[id] = 1;
        if (i == 0) {
          visited.push_back(graph.arc(id).tail);
        } else {
          detail::require(graph.arc(p[i - 1]).head == graph.arc(id).tail,
                          "path arcs are not consecutive");
        }
        visited.push_back(graph.arc(id).head);
      }
      std::sort(visited.begin(), visited.end());
      detail::require(
          std::adjacent_find(visited.begin(), visited.end()) == visited.end(),
          "path is not a simple directed path");
    }
    for (int id = 1; id <= graph.arc_count(); ++id) {
      detail::require(seen[id], "arc " + std::to_string(id) +
                                    " is not covered by any path");
    }
  }

  bool operator==(const ChainInstance&) const = default;
};

// Colorless graph with arc weights; a solution is an st-cut of cardinality
// at most k and total weight at most w.
struct WeightedCutInstance {
  ColoredDigraph graph;  // color_count == 0
  std::vector<std::int64_t> weights;  // weights[i] belongs to arc i+1
  int s = 0;
  int t = 0;
  int k = 0;
  std::int64_t w = 0;

  std::int64_t weight_of(const CutSet& c) const {
    std::int64_t total = 0;
    for (int id : c.edges) total += weights[id - 1];
    return total;
  }

  void validate() const {
    detail::require(graph.color_count == 0, "weighted graphs are colorless");
    detail::require(s >= 1 && s <= graph.vertex_count, "s out of range");
    detail::require(t >= 1 && t <= graph.vertex_count, "t out of range");
    detail::require(s != t, "s and t must differ");
    detail::require(
        static_cast<int>(weights.size()) == graph.arc_count(),
        "weight list length must equal the arc count");
    for (auto wt : weights) detail::require(wt >= 1, "weights must be >= 1");
    detail::require(k >= 0, "k must be nonnegative");
    detail::require(w >= 0, "w must be nonnegative");
  }

  bool operator==(const WeightedCutInstance&) const = default;
};

using Instance = std::variant<CutInstance, SkewInstance, DfasInstance,
                              ChainInstance, WeightedCutInstance>;

// --- Core operations -------------------------------------------------------

// Vertices reachable from `sources` after deleting the arcs in `removed`.
// Sources are always reachable. Linear time, BFS in arc-id order.
inline std::vector<char> reachable_mask(const ColoredDigraph& g,
                                        std::span<const int> sources,
                                        const EdgeSet* removed = nullptr) {
  std::vector<char> mark(g.vertex_count + 1, 0);
  std::vector<int> queue;
  queue.reserve(g.vertex_count);
  for (int v : sources) {
    if (v < 1 || v > g.vertex_count) {
      throw ValidationError("source vertex out of range");
    }
    if (!mark[v]) {
      mark[v] = 1;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int id : g.out[v]) {
      if (removed && removed->contains(id)) continue;
      int to = g.arc(id).head;
      if (!mark[to]) {
        mark[to] = 1;
        queue.push_back(to);
      }
    }
  }
  return mark;
}

inline std::vector<int> reachable(const ColoredDigraph& g,
                                  std::span<const int> sources,
                                  const EdgeSet& removed) {
  auto mark = reachable_mask(g, sources, &removed);
  std::vector<int> out;
  for (int v = 1; v <= g.vertex_count; ++v) {
    if (mark[v]) out.push_back(v);
  }
  return out;
}

inline std::vector<int> reachable(const ColoredDigraph& g,
                                  std::span<const int> sources) {
  EdgeSet none(g.arc_count());
  return reachable(g, sources, none);
}

// Arcs leaving the marked vertex set.
inline CutSet delta_plus(const ColoredDigraph& g,
                         const std::vector<char>& mark) {
  std::vector<int> ids;
  for (int id = 1; id <= g.arc_count(); ++id) {
    const Arc& a = g.arc(id);
    if (mark[a.tail] && !mark[a.head]) ids.push_back(id);
  }
  return CutSet{std::move(ids)};
}

enum class CutClass { not_a_cut, cut_not_minimal, minimal };

// Classifies an arc set: does deleting it separate Y from X, and if so, is
// every arc needed? Minimality is tested literally by re-adding each arc.
inline CutClass classify_cut(const ColoredDigraph& g, std::span<const int> x,
                             std::span<const int> y, const EdgeSet& c) {
  auto cuts = [&](const EdgeSet& removed) {
    auto mark = reachable_mask(g, x, &removed);
    for (int v : y) {
      if (mark[v]) return false;
    }
    return true;
  };
  if (!cuts(c)) return CutClass::not_a_cut;
  EdgeSet probe = c;
  for (int id : c.ids()) {
    probe.erase(id);
    bool still = cuts(probe);
    probe.insert(id);
    if (still) return CutClass::cut_not_minimal;
  }
  return CutClass::minimal;
}

struct BudgetUsage {
  std::vector<int> usage;  // usage[i] = |C ∩ E_{i+1}|
  bool respecting = false;
};

// Per-color usage of a cut, and whether it fits the budgets. A colorless arc
// cannot be deleted, so its presence makes the cut non-respecting.
inline BudgetUsage budget_usage(const ColoredDigraph& g, const CutSet& c,
                                const Budgets& b) {
  BudgetUsage result;
  result.usage.assign(b.color_count(), 0);
  result.respecting = true;
  for (int id : c.edges) {
    if (id < 1 || id > g.arc_count()) {
      throw ValidationError("cut refers to arc " + std::to_string(id) +
                            " which is not in the graph");
    }
    if (g.arc(id).colors == 0) result.respecting = false;
    for (int color = 1; color <= b.color_count(); ++color) {
      if (g.has_color(id, color)) ++result.usage[color - 1];
    }
  }
  for (int i = 0; i < b.color_count(); ++i) {
    if (result.usage[i] > b.values[i]) result.respecting = false;
  }
  return result;
}

inline bool budget_respecting(const ColoredDigraph& g, const CutSet& c,
                              const Budgets& b) {
  return budget_usage(g, c, b).respecting;
}

}  // namespace mbcut
