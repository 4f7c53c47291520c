#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "mbcut/graph.hpp"
#include "mbcut/oracle.hpp"

using namespace mbcut;

namespace {

// 1 -> {2,3} -> 4 diamond, one color.
ColoredDigraph diamond() {
  return ColoredDigraph(4, 1,
                        {{1, 2, color_bit(1)},
                         {2, 4, color_bit(1)},
                         {1, 3, color_bit(1)},
                         {3, 4, color_bit(1)}});
}

}  // namespace

TEST_CASE("brute mbcut returns the lex-first smallest witness", "[oracle]") {
  CutInstance inst{diamond(), {1}, {4}, Budgets{{2}}};
  auto cut = brute_solve_mbcut(inst);
  REQUIRE(cut.has_value());
  CHECK(*cut == CutSet::from_ids({1, 3}));

  inst.budgets.values[0] = 1;
  CHECK_FALSE(brute_solve_mbcut(inst).has_value());
}

TEST_CASE("brute mbcut never deletes colorless arcs", "[oracle]") {
  ColoredDigraph g(2, 1, {{1, 2, 0}});
  CutInstance inst{g, {1}, {2}, Budgets{{1}}};
  CHECK_FALSE(brute_solve_mbcut(inst).has_value());
}

TEST_CASE("brute mbcut respects per-color budgets separately", "[oracle]") {
  // Three parallel arcs: two of color 1, one of color 2. Any cut needs all
  // three, so color 1's budget decides solvability.
  ColoredDigraph g(2, 2, {{1, 2, color_bit(1)}, {1, 2, color_bit(1)},
                          {1, 2, color_bit(2)}});
  CutInstance inst{g, {1}, {2}, Budgets{{1, 1}}};
  CHECK_FALSE(brute_solve_mbcut(inst).has_value());
  inst.budgets = Budgets{{2, 1}};
  auto cut = brute_solve_mbcut(inst);
  REQUIRE(cut.has_value());
  CHECK(*cut == CutSet::from_ids({1, 2, 3}));
}

TEST_CASE("brute minimal cuts enumerates the diamond exactly", "[oracle]") {
  ColoredDigraph g = diamond();
  std::vector<int> x{1}, y{4};
  CutFamily family = brute_minimal_cuts(g, x, y, 4);
  REQUIRE(family.size() == 4);
  CHECK(family.contains(CutSet::from_ids({1, 3})));
  CHECK(family.contains(CutSet::from_ids({1, 4})));
  CHECK(family.contains(CutSet::from_ids({2, 3})));
  CHECK(family.contains(CutSet::from_ids({2, 4})));
  // size bound filters
  CHECK(brute_minimal_cuts(g, x, y, 1).size() == 0);
}

TEST_CASE("brute skew cuts only the forbidden direction", "[oracle]") {
  // pairs (1,2) and (3,4); 3->2 violates the order, 1->4 does not.
  ColoredDigraph g(4, 1, {{3, 2, color_bit(1)}, {1, 4, color_bit(1)}});
  SkewInstance inst{g, Budgets{{1}}, {{1, 2}, {3, 4}}};
  auto cut = brute_solve_skew(inst);
  REQUIRE(cut.has_value());
  CHECK(*cut == CutSet::from_ids({1}));
}

TEST_CASE("brute skew reports unsolvable instances", "[oracle]") {
  // s_2 reaches t_1 through an uncuttable arc.
  ColoredDigraph g(4, 1, {{3, 2, 0}, {1, 4, color_bit(1)}});
  SkewInstance inst{g, Budgets{{1}}, {{1, 2}, {3, 4}}};
  CHECK_FALSE(brute_solve_skew(inst).has_value());
}

TEST_CASE("brute dfas breaks cycles and handles self-loops", "[oracle]") {
  ColoredDigraph tri(3, 1,
                     {{1, 2, color_bit(1)},
                      {2, 3, color_bit(1)},
                      {3, 1, color_bit(1)}});
  DfasInstance inst{tri, Budgets{{1}}};
  auto cut = brute_solve_dfas(inst);
  REQUIRE(cut.has_value());
  CHECK(*cut == CutSet::from_ids({1}));

  ColoredDigraph colorless_loop(1, 0, {{1, 1, 0}});
  CHECK_FALSE(brute_solve_dfas(DfasInstance{colorless_loop, Budgets{{}}})
                  .has_value());

  ColoredDigraph colored_loop(1, 1, {{1, 1, color_bit(1)}});
  auto loop_cut = brute_solve_dfas(DfasInstance{colored_loop, Budgets{{1}}});
  REQUIRE(loop_cut.has_value());
  CHECK(*loop_cut == CutSet::from_ids({1}));
}

TEST_CASE("brute chain counts touched paths, not arcs", "[oracle]") {
  // Path A: 1->2->3 (arcs 1,2); path B: direct arc 1->3 (arc 3).
  ColoredDigraph g(3, 0, {{1, 2, 0}, {2, 3, 0}, {1, 3, 0}});
  ChainInstance inst{g, 1, 3, {{1, 2}, {3}}, 2, 2};
  inst.validate();
  auto cut = brute_solve_chain(inst);
  REQUIRE(cut.has_value());
  CHECK(*cut == CutSet::from_ids({1, 2, 3}));

  inst.k = 1;
  CHECK_FALSE(brute_solve_chain(inst).has_value());
  inst.k = -1;
  CHECK_FALSE(brute_solve_chain(inst).has_value());
}

TEST_CASE("brute weighted respects both bounds", "[oracle]") {
  ColoredDigraph g(2, 0, {{1, 2, 0}, {1, 2, 0}});
  WeightedCutInstance inst{g, {3, 1}, 1, 2, 2, 3};
  CHECK_FALSE(brute_solve_weighted(inst).has_value());
  inst.w = 4;
  auto cut = brute_solve_weighted(inst);
  REQUIRE(cut.has_value());
  CHECK(*cut == CutSet::from_ids({1, 2}));
  inst.k = 1;
  CHECK_FALSE(brute_solve_weighted(inst).has_value());
}

TEST_CASE("weighted closest family keeps the cut nearest t", "[oracle]") {
  WeightedCutInstance inst{
      ColoredDigraph(4, 0, {{1, 2, 0}, {2, 4, 0}, {1, 3, 0}, {3, 4, 0}}),
      {1, 1, 1, 1},
      1,
      4,
      2,
      2};
  auto families = brute_closest_families_weighted(inst);
  CHECK(families.all.size() == 4);
  REQUIRE(families.closest.size() == 1);
  CHECK(families.closest.cuts[0] == CutSet::from_ids({2, 4}));
}

TEST_CASE("chain closest family requires a tight instance", "[oracle]") {
  ColoredDigraph g(3, 0, {{1, 2, 0}, {2, 3, 0}, {1, 3, 0}});
  ChainInstance tight{g, 1, 3, {{1, 2}, {3}}, 2, 2};
  auto families = brute_closest_families_chain(tight);
  CHECK(families.all.size() == 2);
  CHECK(families.all.contains(CutSet::from_ids({1, 3})));
  CHECK(families.all.contains(CutSet::from_ids({2, 3})));
  REQUIRE(families.closest.size() == 1);
  CHECK(families.closest.cuts[0] == CutSet::from_ids({2, 3}));

  ChainInstance loose = tight;
  loose.k = 3;  // already solvable at k-1
  REQUIRE_THROWS_AS(brute_closest_families_chain(loose), ValidationError);
}

TEST_CASE("size guards refuse oversized inputs", "[oracle]") {
  std::vector<Arc> arcs;
  for (int i = 0; i < 21; ++i) arcs.push_back({1, 2, color_bit(1)});
  ColoredDigraph g(2, 1, std::move(arcs));
  CutInstance inst{g, {1}, {2}, Budgets{{21}}};
  CHECK_THROWS_AS(brute_solve_mbcut(inst), GuardError);

  SizeGuard wide;
  wide.max_colored_edges = 25;
  wide.max_subsets = std::uint64_t{1} << 25;
  auto cut = brute_solve_mbcut(inst, wide);
  REQUIRE(cut.has_value());
  CHECK(cut->size() == 21);
}

TEST_CASE("guard settings come from the environment", "[oracle]") {
  ::setenv("MBCUT_GUARD", "30,2000000", 1);
  SizeGuard g = SizeGuard::from_env();
  CHECK(g.max_colored_edges == 30);
  CHECK(g.max_subsets == 2000000);
  ::setenv("MBCUT_GUARD", "12", 1);
  g = SizeGuard::from_env();
  CHECK(g.max_colored_edges == 12);
  CHECK(g.max_subsets == (std::uint64_t{1} << 20));
  ::setenv("MBCUT_GUARD", "nonsense", 1);
  CHECK_THROWS_AS(SizeGuard::from_env(), ValidationError);
  ::unsetenv("MBCUT_GUARD");
  g = SizeGuard::from_env();
  CHECK(g.max_colored_edges == 20);
}
