#include <catch2/catch_amalgamated.hpp>

#include "mbcut/graph.hpp"
#include "mbcut/oracle.hpp"
#include "mbcut/solver.hpp"
#include "test_util.hpp"

using namespace mbcut;

TEST_CASE("branch tuples come out smallest first, then lexicographic",
          "[solver]") {
  auto tuples = branch_tuples(1, Budgets{{1, 1}});
  REQUIRE(tuples.size() == 4);
  CHECK(tuples[0] == std::vector<std::uint64_t>{0, 0});
  CHECK(tuples[1] == std::vector<std::uint64_t>{0, 1});
  CHECK(tuples[2] == std::vector<std::uint64_t>{1, 0});
  CHECK(tuples[3] == std::vector<std::uint64_t>{1, 1});

  auto wide = branch_tuples(2, Budgets{{1}});
  REQUIRE(wide.size() == 3);
  CHECK(wide[0] == std::vector<std::uint64_t>{0});
  CHECK(wide[1] == std::vector<std::uint64_t>{1});
  CHECK(wide[2] == std::vector<std::uint64_t>{2});

  CHECK(branch_tuples(1, Budgets{{1, -1}}).empty());
  CHECK_THROWS_AS(branch_tuples(kMaxBranchPaths + 1, Budgets{{1}}),
                  GuardError);
}

TEST_CASE("a path instance is solved by its closest cut", "[solver]") {
  // 1 -> 2 -> 3, both arcs color 1, budget 1: the arc next to Y wins.
  ColoredDigraph g(3, 1, {{1, 2, color_bit(1)}, {2, 3, color_bit(1)}});
  CutInstance inst{g, {1}, {3}, Budgets{{1}}};
  SolveStats stats;
  auto cut = solve_mbcut(inst, {}, &stats);
  REQUIRE(cut.has_value());
  CHECK(*cut == CutSet::from_ids({2}));
  CHECK(stats.nodes == 1);
  CHECK(stats.depth_max == 1);
}

TEST_CASE("branching recovers from a budget-violating closest cut",
          "[solver]") {
  // Two disjoint 1 -> {2,3} -> 4 paths. The closest minimum cut takes both
  // color-2 arcs next to Y and violates that budget; the solver must branch
  // and mix colors instead.
  ColoredDigraph g(4, 2,
                   {{1, 2, color_bit(1)},
                    {2, 4, color_bit(2)},
                    {1, 3, color_bit(1)},
                    {3, 4, color_bit(2)}});
  CutInstance inst{g, {1}, {4}, Budgets{{1, 1}}};
  SolveStats stats;
  auto cut = solve_mbcut(inst, {}, &stats);
  REQUIRE(cut.has_value());
  CHECK(*cut == CutSet::from_ids({1, 4}));
  CHECK(stats.depth_max == 2);
  CHECK(stats.nodes == 8);
  CHECK(stats.flow_calls == 8);

  SolveOptions par;
  par.parallel = true;
  SolveStats pstats;
  auto pcut = solve_mbcut(inst, par, &pstats);
  REQUIRE(pcut.has_value());
  CHECK(*pcut == *cut);
  CHECK(pstats.nodes == stats.nodes);
  CHECK(pstats.flow_calls == stats.flow_calls);
  CHECK(pstats.depth_max == stats.depth_max);
}

TEST_CASE("trivial and infeasible instances are answered directly",
          "[solver]") {
  // Y unreachable: the empty cut is the answer.
  ColoredDigraph g(3, 1, {{3, 1, color_bit(1)}});
  CutInstance inst{g, {1}, {2}, Budgets{{1}}};
  SolveStats stats;
  auto cut = solve_mbcut(inst, {}, &stats);
  REQUIRE(cut.has_value());
  CHECK(cut->empty());
  CHECK(stats.nodes == 1);

  // A colorless arc from X to Y can never be cut.
  ColoredDigraph g2(2, 1, {{1, 2, 0}});
  CutInstance inst2{g2, {1}, {2}, Budgets{{1}}};
  CHECK_FALSE(solve_mbcut(inst2).has_value());

  // Negative internal budgets mean no solution, without validation.
  CutInstance inst3{g, {1}, {2}, Budgets{{-1}}};
  SolveOptions raw;
  raw.validate = false;
  CHECK_FALSE(solve_mbcut(inst3, raw).has_value());
  // ...but the same budgets fail top-level validation.
  CHECK_THROWS_AS(solve_mbcut(inst3), ValidationError);
}

TEST_CASE("solver matches brute force on random instances", "[solver]") {
  Xoshiro256ss rng(40411);
  int yes = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int colors = 1 + static_cast<int>(rng.below(3));
    CutInstance inst =
        testutil::random_cut_instance(rng, 6, 10, colors, 2);
    CAPTURE(trial, colors, inst.graph.vertex_count, inst.graph.arc_count());

    auto expected = brute_solve_mbcut(inst);
    SolveStats stats;
    auto got = solve_mbcut(inst, {}, &stats);
    REQUIRE(got.has_value() == expected.has_value());
    if (got.has_value()) {
      ++yes;
      EdgeSet removed = got->to_set(inst.graph.arc_count());
      CHECK(classify_cut(inst.graph, inst.x, inst.y, removed) ==
            CutClass::minimal);
      CHECK(budget_respecting(inst.graph, *got, inst.budgets));
    }

    SolveOptions par;
    par.parallel = true;
    SolveStats pstats;
    auto pgot = solve_mbcut(inst, par, &pstats);
    REQUIRE(pgot.has_value() == got.has_value());
    if (got.has_value()) CHECK(*pgot == *got);
    CHECK(pstats.nodes == stats.nodes);
    CHECK(pstats.flow_calls == stats.flow_calls);
    CHECK(pstats.depth_max == stats.depth_max);
  }
  CHECK(yes > 40);
}
