#pragma once

// Exact solver for multi-budgeted reachability cuts.
//
// The search keeps the full budget vector fixed and only shrinks the set Z of
// deletable arcs. Each node computes the Z-flow certificate; if the closest
// minimum cut fits the budgets it is returned, otherwise the node branches on
// which flow paths each color class may still be cut on. Restricting Z that
// way strictly increases the flow value in every child, so the recursion
// depth is bounded by the total budget.

#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

#include "mbcut/graph.hpp"
#include "mbcut/zflow.hpp"

namespace mbcut {

struct SolveStats {
  std::int64_t nodes = 0;       // search tree nodes entered
  std::int64_t flow_calls = 0;  // flow certificates computed
  int depth_max = 0;            // deepest node, root = 1
  double elapsed_seconds = 0.0;
};

struct SolveOptions {
  bool validate = true;   // check instance invariants before solving
  bool parallel = false;  // spread the root branches over hardware threads
};

// The flow value this branching can still handle; beyond it the per-color
// subset lists explode.
inline constexpr int kMaxBranchPaths = 20;

// All tuples (A_1, ..., A_l) of path index sets with |A_i| <= k_i, encoded as
// one bitmask over [lambda] per color. A negative budget admits no set at
// all, so the result is empty. Tuples are ordered by total size, then
// lexicographically, which fixes the search order of the solver.
inline std::vector<std::vector<std::uint64_t>> branch_tuples(
    int lambda, const Budgets& budgets) {
  if (lambda < 0) throw ValidationError("negative path count");
  if (lambda > kMaxBranchPaths) {
    throw GuardError("flow value " + std::to_string(lambda) +
                     " exceeds the branching limit of " +
                     std::to_string(kMaxBranchPaths));
  }
  std::vector<std::vector<std::uint64_t>> per_color;
  per_color.reserve(budgets.color_count());
  std::uint64_t total = 1;
  for (int cap : budgets.values) {
    std::vector<std::uint64_t> masks;
    if (cap >= 0) {
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << lambda); ++m) {
        if (std::popcount(m) <= cap) masks.push_back(m);
      }
    }
    if (masks.empty()) return {};
    total *= masks.size();
    if (total > (std::uint64_t{1} << 22)) {
      throw GuardError("too many branch tuples to materialize");
    }
    per_color.push_back(std::move(masks));
  }
  std::vector<std::vector<std::uint64_t>> tuples;
  tuples.reserve(total);
  std::vector<std::size_t> pick(per_color.size(), 0);
  while (true) {
    std::vector<std::uint64_t> tuple(per_color.size());
    for (std::size_t i = 0; i < per_color.size(); ++i) {
      tuple[i] = per_color[i][pick[i]];
    }
    tuples.push_back(std::move(tuple));
    std::size_t i = per_color.size();
    while (i > 0 && ++pick[i - 1] == per_color[i - 1].size()) {
      pick[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  std::sort(tuples.begin(), tuples.end(),
            [](const std::vector<std::uint64_t>& a,
               const std::vector<std::uint64_t>& b) {
              int sa = 0, sb = 0;
              for (auto m : a) sa += std::popcount(m);
              for (auto m : b) sb += std::popcount(m);
              if (sa != sb) return sa < sb;
              return a < b;
            });
  return tuples;
}

namespace detail {

struct SolveWork {
  const ColoredDigraph& g;
  const std::vector<int>& x;
  const std::vector<int>& y;
  const Budgets& budgets;
  int k;
};

// Removes from z every arc of color i+1 on a path whose index is outside
// tuple[i].
inline void restrict_z(EdgeSet& z, const ColoredDigraph& g,
                       const std::vector<std::vector<int>>& paths,
                       const std::vector<std::uint64_t>& tuple) {
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = 0; j < paths.size(); ++j) {
      if (tuple[i] >> j & 1) continue;
      for (int id : paths[j]) {
        if (g.has_color(id, static_cast<int>(i) + 1)) z.erase(id);
      }
    }
  }
}

inline std::optional<CutSet> solve_rec(const SolveWork& w, SolveStats& stats,
                                       const EdgeSet& z, int depth,
                                       int parent_lambda) {
  ++stats.nodes;
  stats.depth_max = std::max(stats.depth_max, depth);
  ++stats.flow_calls;
  auto cert = max_flow_z(w.g, w.x, w.y, z, w.k);
  if (!cert) return std::nullopt;
  const bool respecting = budget_respecting(w.g, cert->closest, w.budgets);
  if (!respecting && cert->lambda == parent_lambda) {
    // Restricting Z cannot keep the flow value and still admit a violating
    // closest cut; reaching this line means the flow engine is broken.
    throw InternalError(
        "equal-size subcall produced a budget-violating closest cut");
  }
  if (respecting) return std::move(cert->closest);
  for (const auto& tuple : branch_tuples(cert->lambda, w.budgets)) {
    EdgeSet restricted = z;
    restrict_z(restricted, w.g, cert->paths, tuple);
    if (auto found =
            solve_rec(w, stats, restricted, depth + 1, cert->lambda)) {
      return found;
    }
  }
  return std::nullopt;
}

// Runs the root node's branches on worker threads. The branch with the
// lowest index that succeeds wins, and only statistics of branches up to the
// winner are merged, so results and stats match the sequential search
// exactly.
inline std::optional<CutSet> solve_root_parallel(const SolveWork& w,
                                                 SolveStats& stats,
                                                 const EdgeSet& z0) {
  ++stats.nodes;
  stats.depth_max = std::max(stats.depth_max, 1);
  ++stats.flow_calls;
  auto cert = max_flow_z(w.g, w.x, w.y, z0, w.k);
  if (!cert) return std::nullopt;
  if (budget_respecting(w.g, cert->closest, w.budgets)) {
    return std::move(cert->closest);
  }
  const auto tuples = branch_tuples(cert->lambda, w.budgets);

  struct Branch {
    std::optional<CutSet> result;
    SolveStats stats;
    bool ran = false;
  };
  std::vector<Branch> branches(tuples.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> winner{tuples.size()};

  auto body = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= tuples.size() || i >= winner.load()) break;
      EdgeSet restricted = z0;
      restrict_z(restricted, w.g, cert->paths, tuples[i]);
      Branch& b = branches[i];
      b.ran = true;
      b.result =
          solve_rec(w, b.stats, restricted, 2, cert->lambda);
      if (b.result.has_value()) {
        std::size_t cur = winner.load();
        while (i < cur && !winner.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  std::size_t worker_count =
      std::min<std::size_t>(hw == 0 ? 1 : hw, std::max<std::size_t>(
                                                  tuples.size(), 1));
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(worker_count);
  for (std::size_t t = 0; t < worker_count; ++t) {
    workers.emplace_back([&, t]() {
      try {
        body();
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : workers) th.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  const std::size_t won = winner.load();
  std::optional<CutSet> result;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (i > won || !branches[i].ran) continue;
    stats.nodes += branches[i].stats.nodes;
    stats.flow_calls += branches[i].stats.flow_calls;
    stats.depth_max = std::max(stats.depth_max, branches[i].stats.depth_max);
    if (i == won) result = std::move(branches[i].result);
  }
  return result;
}

}  // namespace detail

// Returns a minimal budget-respecting cut of deletable arcs separating Y
// from X, or nothing when none exists. Any negative budget makes the
// instance infeasible outright.
inline std::optional<CutSet> solve_mbcut(const CutInstance& inst,
                                         const SolveOptions& opts = {},
                                         SolveStats* stats_out = nullptr) {
  SolveStats local;
  SolveStats& stats = stats_out ? *stats_out : local;
  stats = SolveStats{};
  const auto start = std::chrono::steady_clock::now();
  auto stop_clock = [&]() {
    stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
  };

  if (opts.validate) inst.validate(true);
  for (int b : inst.budgets.values) {
    if (b < 0) {
      stop_clock();
      return std::nullopt;
    }
  }

  detail::SolveWork work{inst.graph, inst.x, inst.y, inst.budgets,
                         inst.budgets.total()};
  EdgeSet z0 = inst.graph.colored_arcs();
  std::optional<CutSet> result;
  try {
    result = opts.parallel
                 ? detail::solve_root_parallel(work, stats, z0)
                 : detail::solve_rec(work, stats, z0, 1, -1);
  } catch (...) {
    stop_clock();
    throw;
  }
  stop_clock();
  return result;
}

}  // namespace mbcut
