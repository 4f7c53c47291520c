#pragma once

// Enumeration of important multi-budgeted cuts.
//
// A minimal Z-respecting budget-respecting XY-cut C1 dominates C2 when C1's
// deletion leaves at least as many vertices reachable from X and C1 uses no
// more arcs of any color. Important cuts are the maximal elements of that
// order. enumerate_candidates returns a superset of the important cuts; the
// filter functions trim a family down to the undominated members.
//
// The enumeration interleaves two recursions: the outer one branches on
// which flow paths may carry a cut arc of each color (strictly increasing
// the flow value on every level), the inner one peels single path indices
// off the guessed sets while the flow value stays put. Several structural
// facts are checked at runtime and raise InternalError when violated.

#include <cstdint>
#include <optional>
#include <vector>

#include "mbcut/graph.hpp"
#include "mbcut/oracle.hpp"
#include "mbcut/solver.hpp"
#include "mbcut/zflow.hpp"

namespace mbcut {

struct EnumStats {
  std::int64_t important_nodes = 0;  // outer recursion calls
  std::int64_t enum_nodes = 0;       // inner recursion calls
  std::int64_t flow_calls = 0;
};

// Dominance test. Both cuts must be minimal Z-respecting budget-respecting
// XY-cuts; anything else is a ValidationError. Reflexive by definition.
inline bool dominates(const CutInstance& inst, const EdgeSet& z,
                      const CutSet& c1, const CutSet& c2) {
  const ColoredDigraph& g = inst.graph;
  auto check = [&](const CutSet& c, const char* name) {
    BudgetUsage u = budget_usage(g, c, inst.budgets);
    if (!u.respecting) {
      throw ValidationError(std::string(name) +
                            " cut is not budget-respecting");
    }
    for (int id : c.edges) {
      if (!z.contains(id)) {
        throw ValidationError(std::string(name) + " cut is not Z-respecting");
      }
    }
    if (classify_cut(g, inst.x, inst.y, c.to_set(g.arc_count())) !=
        CutClass::minimal) {
      throw ValidationError(std::string(name) + " cut is not a minimal cut");
    }
    return u.usage;
  };
  std::vector<int> use1 = check(c1, "first");
  std::vector<int> use2 = check(c2, "second");

  EdgeSet removed1 = c1.to_set(g.arc_count());
  EdgeSet removed2 = c2.to_set(g.arc_count());
  auto reach1 = reachable_mask(g, inst.x, &removed1);
  auto reach2 = reachable_mask(g, inst.x, &removed2);
  bool sub12 = true, sub21 = true;
  for (int v = 1; v <= g.vertex_count; ++v) {
    if (reach1[v] && !reach2[v]) sub12 = false;
    if (reach2[v] && !reach1[v]) sub21 = false;
  }
  if (sub12 && sub21 && !(c1 == c2)) {
    // a minimal cut equals the out-boundary of its reachable set, so two
    // distinct minimal cuts can never share one
    throw InternalError("distinct minimal cuts share a reachable set");
  }
  for (std::size_t i = 0; i < use1.size(); ++i) {
    if (use1[i] > use2[i]) return false;
  }
  return sub21;
}

namespace detail {

inline std::uint64_t saturating_power(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > ~std::uint64_t{0} / base) return ~std::uint64_t{0};
    r *= base;
  }
  return r;
}

struct EnumContext {
  const CutInstance& inst;
  int k;
  std::uint64_t tuple_bound;  // (k*l + 1)^k, saturated
  EnumStats& stats;
  CutFamily& out;
};

inline void important_rec(EnumContext& ctx, const EdgeSet& z,
                          int lambda_floor);

// The cut added to the family must be minimal, Z-respecting and
// budget-respecting by construction; verify before inserting.
inline void insert_member(EnumContext& ctx, const EdgeSet& z,
                          const CutSet& cut) {
  const ColoredDigraph& g = ctx.inst.graph;
  if (!budget_respecting(g, cut, ctx.inst.budgets)) {
    throw InternalError("enumerated cut violates the budgets");
  }
  for (int id : cut.edges) {
    if (!z.contains(id)) {
      throw InternalError("enumerated cut leaves the deletable set");
    }
  }
  if (classify_cut(g, ctx.inst.x, ctx.inst.y, cut.to_set(g.arc_count())) !=
      CutClass::minimal) {
    throw InternalError("enumerated cut is not a minimal cut");
  }
  ctx.out.add(cut);
}

inline void enum_rec(EnumContext& ctx, const EdgeSet& z,
                     const std::vector<std::vector<int>>& paths,
                     const EdgeSet& bottleneck,
                     const std::vector<std::uint64_t>& tuple, int depth) {
  ++ctx.stats.enum_nodes;
  if (depth > ctx.k + 1) {
    throw InternalError("inner enumeration exceeded its depth bound");
  }
  const ColoredDigraph& g = ctx.inst.graph;

  // Drop the guessed-impossible bottleneck arcs from the deletable set.
  EdgeSet shrunk = z;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = 0; j < paths.size(); ++j) {
      if (tuple[i] >> j & 1) continue;
      for (int id : paths[j]) {
        if (bottleneck.contains(id) &&
            g.has_color(id, static_cast<int>(i) + 1)) {
          shrunk.erase(id);
        }
      }
    }
  }

  ++ctx.stats.flow_calls;
  auto cert = max_flow_z(g, ctx.inst.x, ctx.inst.y, shrunk, ctx.k);
  if (!cert) return;
  const int lambda = static_cast<int>(paths.size());
  if (cert->lambda < lambda) {
    throw InternalError("flow value dropped after shrinking Z");
  }
  if (cert->lambda > lambda) {
    important_rec(ctx, shrunk, lambda);
    return;
  }

  insert_member(ctx, shrunk, cert->closest);
  EdgeSet new_bottleneck = EdgeSet::from_ids(g.arc_count(), cert->bottleneck);
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = 0; j < paths.size(); ++j) {
      if (!(tuple[i] >> j & 1)) continue;
      std::vector<std::uint64_t> next = tuple;
      next[i] &= ~(std::uint64_t{1} << j);
      enum_rec(ctx, shrunk, paths, new_bottleneck, next, depth + 1);
    }
  }
}

inline void important_rec(EnumContext& ctx, const EdgeSet& z,
                          int lambda_floor) {
  ++ctx.stats.important_nodes;
  ++ctx.stats.flow_calls;
  const ColoredDigraph& g = ctx.inst.graph;
  auto cert = max_flow_z(g, ctx.inst.x, ctx.inst.y, z, ctx.k);
  if (!cert) return;
  if (cert->lambda <= lambda_floor) {
    throw InternalError("flow value failed to grow across enumeration levels");
  }
  const auto tuples = branch_tuples(cert->lambda, ctx.inst.budgets);
  if (tuples.size() > ctx.tuple_bound) {
    throw InternalError("branch tuple count exceeded its bound");
  }
  EdgeSet bottleneck = EdgeSet::from_ids(g.arc_count(), cert->bottleneck);
  for (const auto& tuple : tuples) {
    enum_rec(ctx, z, cert->paths, bottleneck, tuple, 1);
  }
}

}  // namespace detail

// Enumerates a family of minimal Z-respecting budget-respecting XY-cuts that
// contains every important one. Any negative budget yields an empty family.
inline CutFamily enumerate_candidates(const CutInstance& inst, const EdgeSet& z,
                                      EnumStats* stats_out = nullptr) {
  EnumStats local;
  EnumStats& stats = stats_out ? *stats_out : local;
  stats = EnumStats{};
  inst.validate(false);
  if (z.universe_size() != inst.graph.arc_count()) {
    throw ValidationError("deletable set does not match the graph");
  }
  for (int id : z.ids()) {
    if (inst.graph.arc(id).colors == 0) {
      throw ValidationError("deletable set contains a colorless arc");
    }
  }
  CutFamily out;
  out.origin = CutFamily::Origin::enumerated;
  for (int b : inst.budgets.values) {
    if (b < 0) return out;
  }
  const int k = inst.budgets.total();
  detail::EnumContext ctx{
      inst, k,
      detail::saturating_power(
          static_cast<std::uint64_t>(k) * inst.budgets.color_count() + 1, k),
      stats, out};
  detail::important_rec(ctx, z, -1);
  return out;
}

inline CutFamily enumerate_candidates(const CutInstance& inst,
                                      EnumStats* stats_out = nullptr) {
  return enumerate_candidates(inst, inst.graph.colored_arcs(), stats_out);
}

// Ground truth by exhaustion: all minimal budget-respecting cuts, then drop
// everything dominated by another member of that universe.
inline CutFamily brute_important(const CutInstance& inst,
                                 const SizeGuard& guard = {}) {
  const ColoredDigraph& g = inst.graph;
  CutFamily universe;
  universe.origin = CutFamily::Origin::brute;
  CutFamily minimal = brute_minimal_cuts(g, inst.x, inst.y,
                                         inst.budgets.total(), guard);
  for (const auto& cut : minimal.cuts) {
    if (budget_respecting(g, cut, inst.budgets)) universe.add(cut);
  }
  EdgeSet all = g.colored_arcs();
  CutFamily important;
  important.origin = CutFamily::Origin::brute;
  for (const auto& cut : universe.cuts) {
    bool beaten = false;
    for (const auto& other : universe.cuts) {
      if (other == cut) continue;
      if (dominates(inst, all, other, cut)) {
        beaten = true;
        break;
      }
    }
    if (!beaten) important.add(cut);
  }
  return important;
}

enum class FilterTier { automatic, exact, relative };

// Removes dominated members from a family. The exact tier compares against
// the full universe of minimal budget-respecting cuts and therefore needs a
// small instance; the relative tier compares members against each other
// only, which can keep cuts that a non-member dominates.
inline CutFamily filter_important(const CutInstance& inst,
                                  const CutFamily& family,
                                  FilterTier tier = FilterTier::automatic,
                                  const SizeGuard& guard = {}) {
  const ColoredDigraph& g = inst.graph;
  bool exact;
  switch (tier) {
    case FilterTier::exact:
      exact = true;
      break;
    case FilterTier::relative:
      exact = false;
      break;
    default:
      exact = g.colored_arcs().count() <= guard.max_colored_edges;
      break;
  }
  EdgeSet all = g.colored_arcs();
  CutFamily result;
  result.origin = CutFamily::Origin::filtered;
  result.relative_filter = !exact;
  if (exact) {
    CutFamily universe;
    CutFamily minimal = brute_minimal_cuts(g, inst.x, inst.y,
                                           inst.budgets.total(), guard);
    for (const auto& cut : minimal.cuts) {
      if (budget_respecting(g, cut, inst.budgets)) universe.add(cut);
    }
    for (const auto& cut : family.cuts) {
      bool beaten = false;
      for (const auto& other : universe.cuts) {
        if (other == cut) continue;
        if (dominates(inst, all, other, cut)) {
          beaten = true;
          break;
        }
      }
      if (!beaten) result.add(cut);
    }
  } else {
    for (const auto& cut : family.cuts) {
      bool beaten = false;
      for (const auto& other : family.cuts) {
        if (other == cut) continue;
        if (dominates(inst, all, other, cut)) {
          beaten = true;
          break;
        }
      }
      if (!beaten) result.add(cut);
    }
  }
  return result;
}

}  // namespace mbcut
