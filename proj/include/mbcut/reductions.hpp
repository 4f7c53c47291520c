#pragma once

// Instance constructors: gadgets translating between problem flavors, plus
// seeded generators for tests and benchmarks.

#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mbcut/graph.hpp"
#include "mbcut/io.hpp"
#include "mbcut/oracle.hpp"
#include "mbcut/rng.hpp"

namespace mbcut {

// Provenance of a constructed instance: which source object produced which
// arcs, and one note per produced arc.
struct ReductionMap {
  std::map<std::string, std::vector<int>> forward;
  std::vector<std::string> notes;  // notes[i] describes arc i+1

  void record(const std::string& key, int arc_id, std::string note) {
    forward[key].push_back(arc_id);
    if (static_cast<int>(notes.size()) < arc_id) notes.resize(arc_id);
    notes[arc_id - 1] = std::move(note);
  }
};

struct CutReduction {
  CutInstance instance;
  ReductionMap map;
};

struct WeightedReduction {
  WeightedCutInstance instance;
  ReductionMap map;
};

// Bipartite vertex cover with one budget per side. Upper vertices are
// numbered 1..upper and lower vertices 1..lower, independently.
struct CbvcInstance {
  int upper = 0;
  int lower = 0;
  std::vector<std::pair<int, int>> edges;
  int k_upper = 0;
  int k_lower = 0;

  void validate() const {
    detail::require(upper >= 0 && lower >= 0, "side sizes must be >= 0");
    detail::require(k_upper >= 1 && k_lower >= 1, "budgets must be >= 1");
    for (const auto& [u, v] : edges) {
      detail::require(u >= 1 && u <= upper, "upper endpoint out of range");
      detail::require(v >= 1 && v <= lower, "lower endpoint out of range");
    }
  }
};

// Format: "p cbvc <upper> <lower> <edge count>", one "b <k_upper> <k_lower>"
// line, then one "e <u> <v>" line per edge. '#' starts a comment.
inline CbvcInstance parse_cbvc(std::string_view text) {
  CbvcInstance inst;
  bool have_p = false;
  bool have_b = false;
  int edges_declared = 0;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] == "p") {
      if (have_p) throw ParseError(line_no, "duplicate p line");
      if (toks.size() != 5 || toks[1] != "cbvc") {
        throw ParseError(line_no, "expected 'p cbvc <upper> <lower> <edges>'");
      }
      inst.upper = detail::parse_bounded(toks[2], line_no, "upper", 0, 1000000);
      inst.lower = detail::parse_bounded(toks[3], line_no, "lower", 0, 1000000);
      edges_declared =
          detail::parse_bounded(toks[4], line_no, "edge count", 0, 1000000);
      have_p = true;
    } else if (toks[0] == "b") {
      if (!have_p) throw ParseError(line_no, "b before p");
      if (have_b) throw ParseError(line_no, "duplicate b line");
      if (toks.size() != 3) throw ParseError(line_no, "expected 'b <k_upper> <k_lower>'");
      inst.k_upper = detail::parse_bounded(toks[1], line_no, "k_upper", 1, 1000000);
      inst.k_lower = detail::parse_bounded(toks[2], line_no, "k_lower", 1, 1000000);
      have_b = true;
    } else if (toks[0] == "e") {
      if (!have_p) throw ParseError(line_no, "e before p");
      if (toks.size() != 3) throw ParseError(line_no, "expected 'e <u> <v>'");
      int u = detail::parse_bounded(toks[1], line_no, "u", 1, inst.upper);
      int v = detail::parse_bounded(toks[2], line_no, "v", 1, inst.lower);
      inst.edges.emplace_back(u, v);
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(toks[0]) + "'");
    }
  }
  if (!have_p) throw ParseError(line_no, "missing p line");
  if (!have_b) throw ParseError(line_no, "missing b line");
  if (static_cast<int>(inst.edges.size()) != edges_declared) {
    throw ParseError(line_no, "edge count mismatch");
  }
  inst.validate();
  return inst;
}

inline std::string write_cbvc(const CbvcInstance& inst) {
  inst.validate();
  std::ostringstream os;
  os << "p cbvc " << inst.upper << ' ' << inst.lower << ' '
     << inst.edges.size() << '\n';
  os << "b " << inst.k_upper << ' ' << inst.k_lower << '\n';
  for (const auto& [u, v] : inst.edges) os << "e " << u << ' ' << v << '\n';
  return os.str();
}

// Exhaustive two-sided vertex cover, upper-side subsets in ascending mask
// order. Returns (upper picks, lower picks) or nothing.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>>
brute_solve_cbvc(const CbvcInstance& inst, const SizeGuard& guard = {}) {
  inst.validate();
  if (inst.upper >= 63 ||
      (std::uint64_t{1} << inst.upper) > guard.max_subsets) {
    throw GuardError(
        "too many upper-side subsets to enumerate; set MBCUT_GUARD to "
        "override");
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inst.upper);
       ++mask) {
    if (std::popcount(mask) > inst.k_upper) continue;
    std::set<int> lower_needed;
    for (const auto& [u, v] : inst.edges) {
      if (!(mask >> (u - 1) & 1)) lower_needed.insert(v);
    }
    if (static_cast<int>(lower_needed.size()) > inst.k_lower) continue;
    std::vector<int> upper_picked;
    for (int u = 1; u <= inst.upper; ++u) {
      if (mask >> (u - 1) & 1) upper_picked.push_back(u);
    }
    return std::make_pair(upper_picked, std::vector<int>(lower_needed.begin(),
                                                         lower_needed.end()));
  }
  return std::nullopt;
}

// Two-sided vertex cover as a two-color cut: picking the arc into u (color 1)
// or out of v (color 2) stands for putting that vertex in the cover, and the
// middle arcs are uncuttable.
inline CutReduction vc_to_mbcut(const CbvcInstance& vc) {
  vc.validate();
  const int s = vc.upper + vc.lower + 1;
  const int t = vc.upper + vc.lower + 2;
  CutReduction out;
  std::vector<Arc> arcs;
  for (int u = 1; u <= vc.upper; ++u) {
    arcs.push_back({s, u, color_bit(1)});
    out.map.record("u" + std::to_string(u), static_cast<int>(arcs.size()),
                   "first-color arc selecting upper vertex " +
                       std::to_string(u));
  }
  for (int v = 1; v <= vc.lower; ++v) {
    arcs.push_back({vc.upper + v, t, color_bit(2)});
    out.map.record("l" + std::to_string(v), static_cast<int>(arcs.size()),
                   "second-color arc selecting lower vertex " +
                       std::to_string(v));
  }
  for (std::size_t i = 0; i < vc.edges.size(); ++i) {
    const auto& [u, v] = vc.edges[i];
    arcs.push_back({u, vc.upper + v, 0});
    out.map.record("e" + std::to_string(i + 1),
                   static_cast<int>(arcs.size()),
                   "uncuttable image of edge " + std::to_string(u) + "-" +
                       std::to_string(v));
  }
  out.instance =
      CutInstance{ColoredDigraph(vc.upper + vc.lower + 2, 2, std::move(arcs)),
                  {s},
                  {t},
                  Budgets{{vc.k_upper, vc.k_lower}}};
  return out;
}

// Raises the color count; each new color gets one fresh forced-cut arc from
// the first x to the first y and a budget of 1, so the answer is unchanged.
inline CutInstance pad_colors(const CutInstance& inst, int target) {
  inst.validate();
  if (target < inst.graph.color_count) {
    throw ValidationError("target color count below the current one");
  }
  if (target > kMaxColors) {
    throw ValidationError("target color count exceeds the supported maximum");
  }
  CutInstance out = inst;
  std::vector<Arc> arcs = inst.graph.arcs;
  for (int c = inst.graph.color_count + 1; c <= target; ++c) {
    arcs.push_back({inst.x.front(), inst.y.front(), color_bit(c)});
    out.budgets.values.push_back(1);
  }
  out.graph =
      ColoredDigraph(inst.graph.vertex_count, target, std::move(arcs));
  return out;
}

// Two-color cut as a weighted cut. First-color arcs become heavy single
// arcs, second-color arcs become bundles of k_1+1 unit arcs: the cardinality
// bound then admits at most k_2 bundles, and the weight bound at most k_1
// heavy arcs. Everything else is priced out at w+1.
inline WeightedReduction mbcut2_to_weighted(const CutInstance& inst) {
  inst.validate();
  if (inst.graph.color_count != 2) {
    throw ValidationError("weighted reduction requires exactly two colors");
  }
  const std::int64_t k1 = inst.budgets.values[0];
  const std::int64_t k2 = inst.budgets.values[1];
  const std::int64_t heavy = (k1 + 1) * k2 + 1;
  const int k = static_cast<int>((k1 + 1) * k2 + k1);
  const std::int64_t w = k1 * heavy + (k1 + 1) * k2;
  const std::int64_t prohibitive = w + 1;

  // split arcs carrying both colors into one copy per color
  struct Piece {
    Arc arc;
    int source_id;
    bool second_copy;
  };
  std::vector<Piece> pieces;
  for (int id = 1; id <= inst.graph.arc_count(); ++id) {
    const Arc& a = inst.graph.arc(id);
    if (a.colors == (color_bit(1) | color_bit(2))) {
      pieces.push_back({{a.tail, a.head, color_bit(1)}, id, false});
    } else {
      pieces.push_back({a, id, false});
    }
  }
  for (int id = 1; id <= inst.graph.arc_count(); ++id) {
    const Arc& a = inst.graph.arc(id);
    if (a.colors == (color_bit(1) | color_bit(2))) {
      pieces.push_back({{a.tail, a.head, color_bit(2)}, id, true});
    }
  }

  const int s = inst.graph.vertex_count + 1;
  const int t = inst.graph.vertex_count + 2;
  WeightedReduction out;
  std::vector<Arc> arcs;
  std::vector<std::int64_t> weights;
  auto push = [&](int tail, int head, std::int64_t weight,
                  const std::string& key, std::string note) {
    arcs.push_back({tail, head, 0});
    weights.push_back(weight);
    out.map.record(key, static_cast<int>(arcs.size()), std::move(note));
  };
  for (const Piece& p : pieces) {
    std::string key = "arc" + std::to_string(p.source_id) +
                      (p.second_copy ? "/2" : "");
    std::string origin = "arc " + std::to_string(p.source_id) +
                         (p.second_copy ? " (second-color copy)" : "");
    if (p.arc.colors == 0) {
      push(p.arc.tail, p.arc.head, prohibitive, key,
           "priced-out image of colorless " + origin);
    } else if (p.arc.colors == color_bit(1)) {
      push(p.arc.tail, p.arc.head, heavy, key, "heavy image of " + origin);
    } else {
      for (std::int64_t c = 0; c < k1 + 1; ++c) {
        push(p.arc.tail, p.arc.head, 1, key,
             "bundle copy " + std::to_string(c + 1) + "/" +
                 std::to_string(k1 + 1) + " of " + origin);
      }
    }
  }
  for (int x : inst.x) {
    push(s, x, prohibitive, "x" + std::to_string(x),
         "priced-out link into x-vertex " + std::to_string(x));
  }
  for (int y : inst.y) {
    push(y, t, prohibitive, "y" + std::to_string(y),
         "priced-out link out of y-vertex " + std::to_string(y));
  }
  out.instance = WeightedCutInstance{
      ColoredDigraph(inst.graph.vertex_count + 2, 0, std::move(arcs)),
      std::move(weights),
      s,
      t,
      k,
      w};
  return out;
}

// Weighted cut as a two-color cut: one first-color copy counts cardinality,
// weight-many second-color copies count weight.
inline CutReduction weighted_to_mbcut2(const WeightedCutInstance& inst,
                                       std::int64_t max_copies = 1000000) {
  inst.validate();
  std::int64_t copies = 0;
  for (std::int64_t weight : inst.weights) copies += 1 + weight;
  if (copies > max_copies) {
    throw GuardError("weighted expansion would exceed " +
                     std::to_string(max_copies) + " arcs");
  }
  CutReduction out;
  std::vector<Arc> arcs;
  for (int id = 1; id <= inst.graph.arc_count(); ++id) {
    const Arc& a = inst.graph.arc(id);
    const std::string key = "arc" + std::to_string(id);
    arcs.push_back({a.tail, a.head, color_bit(1)});
    out.map.record(key, static_cast<int>(arcs.size()),
                   "cardinality copy of arc " + std::to_string(id));
    for (std::int64_t c = 0; c < inst.weights[id - 1]; ++c) {
      arcs.push_back({a.tail, a.head, color_bit(2)});
      out.map.record(key, static_cast<int>(arcs.size()),
                     "weight copy " + std::to_string(c + 1) + "/" +
                         std::to_string(inst.weights[id - 1]) + " of arc " +
                         std::to_string(id));
    }
  }
  if (inst.w > std::numeric_limits<int>::max()) {
    throw GuardError("weight bound too large for a color budget");
  }
  out.instance =
      CutInstance{ColoredDigraph(inst.graph.vertex_count, 2, std::move(arcs)),
                  {inst.s},
                  {inst.t},
                  Budgets{{inst.k, static_cast<int>(inst.w)}}};
  return out;
}

// k internally disjoint s-to-t paths of k arcs each, the j-th arc of every
// path colored j, all budgets 1. Exactly k! important cuts: each path must
// lose one arc, and the chosen colors must be pairwise distinct.
inline CutInstance gen_factorial_family(int k) {
  if (k < 1 || k > 6) {
    throw GuardError("path count must be between 1 and 6");
  }
  const int n = k * (k - 1) + 2;
  std::vector<Arc> arcs;
  for (int p = 0; p < k; ++p) {
    int prev = 1;
    for (int j = 1; j <= k; ++j) {
      const int next = (j == k) ? n : 2 + p * (k - 1) + (j - 1);
      arcs.push_back({prev, next, color_bit(j)});
      prev = next;
    }
  }
  Budgets budgets;
  budgets.values.assign(k, 1);
  return CutInstance{ColoredDigraph(n, k, std::move(arcs)), {1}, {n}, budgets};
}

enum class RandomKind { cut, skew, dfas };

struct RandomSpec {
  RandomKind kind = RandomKind::cut;
  std::uint64_t seed = 1;
  int vertices = 8;
  int arcs = 12;
  int colors = 2;
  std::vector<int> budgets;  // empty means all ones
  double color_density = 0.75;
  int pairs = 2;  // ordered multicut only
  bool simple = false;
};

// Reproducible instance from a 64-bit seed: the same spec yields the same
// instance on every platform.
inline Instance gen_random(const RandomSpec& spec) {
  detail::require(spec.vertices >= 2, "need at least two vertices");
  detail::require(spec.arcs >= 0, "arc count must be >= 0");
  detail::require(spec.colors >= 1 && spec.colors <= kMaxColors,
                  "color count out of range");
  detail::require(spec.color_density >= 0.0 && spec.color_density <= 1.0,
                  "color density must lie in [0, 1]");
  detail::require(spec.pairs >= 0, "pair count must be >= 0");
  if (spec.simple) {
    std::int64_t cap = static_cast<std::int64_t>(spec.vertices) *
                       (spec.vertices - 1);
    detail::require(spec.arcs <= cap, "too many arcs for a simple graph");
  }
  Budgets budgets;
  if (spec.budgets.empty()) {
    budgets.values.assign(spec.colors, 1);
  } else {
    detail::require(
        static_cast<int>(spec.budgets.size()) == spec.colors,
        "budget list length must match the color count");
    for (int b : spec.budgets) {
      detail::require(b >= 1, "budgets must be >= 1");
    }
    budgets.values = spec.budgets;
  }

  Xoshiro256ss rng(spec.seed);
  std::set<std::pair<int, int>> used;
  std::vector<Arc> arcs;
  for (int i = 0; i < spec.arcs; ++i) {
    int tail = rng.range(1, spec.vertices);
    int head = rng.range(1, spec.vertices);
    while (spec.simple && (tail == head || used.count({tail, head}))) {
      tail = rng.range(1, spec.vertices);
      head = rng.range(1, spec.vertices);
    }
    used.insert({tail, head});
    ColorMask colors = 0;
    if (rng.unit() < spec.color_density) {
      colors = color_bit(rng.range(1, spec.colors));
      for (int c = 1; c <= spec.colors; ++c) {
        if (!(colors & color_bit(c)) && rng.unit() < 0.2) {
          colors |= color_bit(c);
        }
      }
    }
    arcs.push_back({tail, head, colors});
  }
  ColoredDigraph g(spec.vertices, spec.colors, std::move(arcs));

  switch (spec.kind) {
    case RandomKind::cut: {
      CutInstance inst{std::move(g), {1}, {spec.vertices}, budgets};
      inst.validate();
      return inst;
    }
    case RandomKind::skew: {
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < spec.pairs; ++i) {
        int s = rng.range(1, spec.vertices);
        int t = rng.range(1, spec.vertices);
        pairs.emplace_back(s, t);
      }
      SkewInstance inst{std::move(g), budgets, std::move(pairs)};
      inst.validate();
      return inst;
    }
    case RandomKind::dfas: {
      DfasInstance inst{std::move(g), budgets};
      inst.validate();
      return inst;
    }
  }
  throw ValidationError("unknown random instance kind");
}

struct RandomWeightedSpec {
  std::uint64_t seed = 1;
  int vertices = 6;
  int arcs = 10;
  int max_weight = 4;
  int k = 2;
  std::int64_t w = 5;
};

inline WeightedCutInstance gen_random_weighted(const RandomWeightedSpec& spec) {
  detail::require(spec.vertices >= 2, "need at least two vertices");
  detail::require(spec.arcs >= 0, "arc count must be >= 0");
  detail::require(spec.max_weight >= 1, "max weight must be >= 1");
  Xoshiro256ss rng(spec.seed);
  std::vector<Arc> arcs;
  std::vector<std::int64_t> weights;
  for (int i = 0; i < spec.arcs; ++i) {
    arcs.push_back({rng.range(1, spec.vertices), rng.range(1, spec.vertices),
                    0});
    weights.push_back(rng.range(1, spec.max_weight));
  }
  WeightedCutInstance inst{ColoredDigraph(spec.vertices, 0, std::move(arcs)),
                           std::move(weights),
                           1,
                           spec.vertices,
                           spec.k,
                           spec.w};
  inst.validate();
  return inst;
}

struct RandomChainSpec {
  std::uint64_t seed = 1;
  int paths = 3;
  int max_path_length = 3;
};

// Internally disjoint s-to-t paths; every cut must touch all of them, so the
// instance is solvable at k = paths and at no smaller k.
inline ChainInstance gen_random_chain(const RandomChainSpec& spec) {
  detail::require(spec.paths >= 1, "need at least one path");
  detail::require(spec.max_path_length >= 1, "paths need at least one arc");
  Xoshiro256ss rng(spec.seed);
  std::vector<int> lengths;
  int inner = 0;
  for (int p = 0; p < spec.paths; ++p) {
    lengths.push_back(rng.range(1, spec.max_path_length));
    inner += lengths.back() - 1;
  }
  const int n = inner + 2;
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> paths;
  int next_inner = 2;
  for (int p = 0; p < spec.paths; ++p) {
    std::vector<int> ids;
    int prev = 1;
    for (int j = 1; j <= lengths[p]; ++j) {
      int head = (j == lengths[p]) ? n : next_inner++;
      arcs.push_back({prev, head, 0});
      ids.push_back(static_cast<int>(arcs.size()));
      prev = head;
    }
    paths.push_back(std::move(ids));
  }
  ChainInstance inst{ColoredDigraph(n, 0, std::move(arcs)),
                     1,
                     n,
                     std::move(paths),
                     spec.max_path_length,
                     spec.paths};
  inst.validate();
  return inst;
}

}  // namespace mbcut
