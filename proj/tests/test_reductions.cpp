#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "mbcut/graph.hpp"
#include "mbcut/important.hpp"
#include "mbcut/io.hpp"
#include "mbcut/oracle.hpp"
#include "mbcut/reductions.hpp"
#include "mbcut/solver.hpp"

using namespace mbcut;

TEST_CASE("two-sided vertex cover text round-trips", "[reductions]") {
  const std::string text =
      "p cbvc 2 1 2\n"
      "b 2 1\n"
      "e 1 1\n"
      "e 2 1\n";
  CbvcInstance inst = parse_cbvc(text);
  REQUIRE(inst.upper == 2);
  REQUIRE(inst.lower == 1);
  REQUIRE(inst.k_upper == 2);
  REQUIRE(inst.k_lower == 1);
  REQUIRE(inst.edges == std::vector<std::pair<int, int>>{{1, 1}, {2, 1}});
  REQUIRE(write_cbvc(inst) == text);

  REQUIRE_THROWS_AS(parse_cbvc("p cbvc 1 1 0\n"), ParseError);  // missing b
  REQUIRE_THROWS_AS(parse_cbvc("p cbvc 1 1 1\nb 1 1\ne 2 1\n"), ParseError);
  REQUIRE_THROWS_AS(parse_cbvc("p cbvc 1 1 2\nb 1 1\ne 1 1\n"), ParseError);
  REQUIRE_THROWS_AS(parse_cbvc("p cbvc 1 1 0\nb 1 1\nz\n"), ParseError);
  REQUIRE_THROWS_AS(parse_cbvc("p cbvc 1 1 0\np cbvc 1 1 0\nb 1 1\n"),
                    ParseError);
  REQUIRE_THROWS_AS(parse_cbvc("p cbvc 1 1 0\nb 0 1\n"), ParseError);
}

TEST_CASE("exhaustive two-sided vertex cover", "[reductions]") {
  CbvcInstance single{1, 1, {{1, 1}}, 1, 1};
  auto got = brute_solve_cbvc(single);
  REQUIRE(got.has_value());
  // mask order tries the empty upper side first
  REQUIRE(got->first.empty());
  REQUIRE(got->second == std::vector<int>{1});

  // a star centered on the single lower vertex
  CbvcInstance star{3, 1, {{1, 1}, {2, 1}, {3, 1}}, 1, 1};
  auto center = brute_solve_cbvc(star);
  REQUIRE(center.has_value());
  REQUIRE(center->first.empty());
  REQUIRE(center->second == std::vector<int>{1});

  // the same star with the lower side forbidden from covering it
  CbvcInstance hard{3, 2, {{1, 1}, {2, 1}, {3, 1}, {1, 2}}, 2, 1};
  auto picked = brute_solve_cbvc(hard);
  REQUIRE(picked.has_value());

  CbvcInstance wide{21, 1, {}, 1, 1};
  REQUIRE_THROWS_AS(brute_solve_cbvc(wide), GuardError);
}

TEST_CASE("vertex cover gadget structure", "[reductions]") {
  CbvcInstance single{1, 1, {{1, 1}}, 1, 1};
  CutReduction red = vc_to_mbcut(single);
  const ColoredDigraph& g = red.instance.graph;
  REQUIRE(g.vertex_count == 4);
  REQUIRE(g.arc_count() == 3);
  REQUIRE(g.arc(1).tail == 3);  // source terminal
  REQUIRE(g.arc(1).head == 1);
  REQUIRE(g.arc(1).colors == color_bit(1));
  REQUIRE(g.arc(2).tail == 2);
  REQUIRE(g.arc(2).head == 4);
  REQUIRE(g.arc(2).colors == color_bit(2));
  REQUIRE(g.arc(3).tail == 1);
  REQUIRE(g.arc(3).head == 2);
  REQUIRE(g.arc(3).colors == 0);
  REQUIRE(red.instance.x == std::vector<int>{3});
  REQUIRE(red.instance.y == std::vector<int>{4});
  REQUIRE(red.instance.budgets.values == std::vector<int>{1, 1});
  REQUIRE(brute_solve_mbcut(red.instance) == CutSet::from_ids({1}));

  // every colored arc has exactly one source object
  REQUIRE(red.map.forward.at("u1") == std::vector<int>{1});
  REQUIRE(red.map.forward.at("l1") == std::vector<int>{2});
  REQUIRE(red.map.forward.at("e1") == std::vector<int>{3});
  for (const std::string& note : red.map.notes) REQUIRE(!note.empty());
}

TEST_CASE("vertex cover gadget solves a path through the lower side",
          "[reductions]") {
  // u1 - v1 - u2: picking v1 covers both edges
  CbvcInstance path{2, 1, {{1, 1}, {2, 1}}, 2, 1};
  CutReduction red = vc_to_mbcut(path);
  const ColoredDigraph& g = red.instance.graph;
  // arc 3 is (v1, t); alone it separates
  REQUIRE(classify_cut(g, red.instance.x, red.instance.y,
                       CutSet::from_ids({3}).to_set(g.arc_count())) ==
          CutClass::minimal);
  REQUIRE(brute_solve_mbcut(red.instance).has_value());

  CbvcInstance lonely{1, 1, {}, 1, 1};
  REQUIRE(brute_solve_mbcut(vc_to_mbcut(lonely).instance) == CutSet{});
}

TEST_CASE("vertex cover gadget matches the two-sided oracle", "[reductions]") {
  Xoshiro256ss rng(0xc0ffeeULL);
  int yes = 0;
  for (int trial = 0; trial < 100; ++trial) {
    CbvcInstance vc;
    vc.upper = rng.range(1, 4);
    vc.lower = rng.range(1, 4);
    int m = rng.range(0, 8);
    for (int i = 0; i < m; ++i) {
      vc.edges.emplace_back(rng.range(1, vc.upper), rng.range(1, vc.lower));
    }
    vc.k_upper = rng.range(1, 2);
    vc.k_lower = rng.range(1, 2);
    bool cover = brute_solve_cbvc(vc).has_value();
    bool cut = brute_solve_mbcut(vc_to_mbcut(vc).instance).has_value();
    REQUIRE(cover == cut);
    yes += cover;
  }
  REQUIRE(yes > 30);
}

TEST_CASE("padding colors preserves the answer", "[reductions]") {
  CutReduction red = vc_to_mbcut(CbvcInstance{1, 1, {{1, 1}}, 1, 1});
  const CutInstance& base = red.instance;

  CutInstance same = pad_colors(base, 2);
  REQUIRE(same.graph == base.graph);
  REQUIRE(same.budgets == base.budgets);

  CutInstance three = pad_colors(base, 3);
  REQUIRE(three.graph.color_count == 3);
  REQUIRE(three.graph.arc_count() == base.graph.arc_count() + 1);
  const Arc& extra = three.graph.arc(4);
  REQUIRE(extra.tail == 3);
  REQUIRE(extra.head == 4);
  REQUIRE(extra.colors == color_bit(3));
  REQUIRE(three.budgets.values == std::vector<int>{1, 1, 1});
  REQUIRE(brute_solve_mbcut(three).has_value() ==
          brute_solve_mbcut(base).has_value());

  CutInstance five = pad_colors(base, 5);
  REQUIRE(five.graph.arc_count() == base.graph.arc_count() + 3);
  REQUIRE(brute_solve_mbcut(five).has_value() ==
          brute_solve_mbcut(base).has_value());

  REQUIRE_THROWS_AS(pad_colors(three, 2), ValidationError);
  REQUIRE_THROWS_AS(pad_colors(base, 65), ValidationError);
}

TEST_CASE("weighted reduction instantiates the bound formulas",
          "[reductions]") {
  ColoredDigraph g(2, 2, {{1, 2, color_bit(1)}, {1, 2, color_bit(2)}});

  WeightedReduction small =
      mbcut2_to_weighted(CutInstance{g, {1}, {2}, Budgets{{1, 1}}});
  REQUIRE(small.instance.k == 3);
  REQUIRE(small.instance.w == 5);
  REQUIRE(small.instance.weights ==
          std::vector<std::int64_t>{3, 1, 1, 6, 6});
  REQUIRE(small.instance.s == 3);
  REQUIRE(small.instance.t == 4);
  REQUIRE(small.instance.graph.arc_count() == 5);
  REQUIRE(brute_solve_weighted(small.instance).has_value());

  WeightedReduction big =
      mbcut2_to_weighted(CutInstance{g, {1}, {2}, Budgets{{2, 3}}});
  REQUIRE(big.instance.k == 11);
  REQUIRE(big.instance.w == 29);
  REQUIRE(big.instance.weights[0] == 10);

  REQUIRE_THROWS_AS(
      mbcut2_to_weighted(CutInstance{ColoredDigraph(2, 1, {}),
                                     {1},
                                     {2},
                                     Budgets{{1}}}),
      ValidationError);
}

TEST_CASE("weighted reduction splits two-colored arcs", "[reductions]") {
  ColoredDigraph g(2, 2, {{1, 2, color_bit(1) | color_bit(2)}});
  WeightedReduction red =
      mbcut2_to_weighted(CutInstance{g, {1}, {2}, Budgets{{1, 1}}});
  // heavy first-color image, then the appended second-color bundle
  REQUIRE(red.instance.weights == std::vector<std::int64_t>{3, 1, 1, 6, 6});
  REQUIRE(red.map.forward.at("arc1") == std::vector<int>{1});
  REQUIRE(red.map.forward.at("arc1/2") == std::vector<int>{2, 3});
  REQUIRE(brute_solve_weighted(red.instance).has_value() ==
          brute_solve_mbcut(CutInstance{g, {1}, {2}, Budgets{{1, 1}}})
              .has_value());
}

TEST_CASE("weighted reduction agrees with the two-color oracle",
          "[reductions]") {
  Xoshiro256ss rng(0xabba1972ULL);
  int yes = 0;
  for (int trial = 0; trial < 100; ++trial) {
    RandomSpec spec;
    spec.kind = RandomKind::cut;
    spec.seed = rng.next();
    spec.vertices = rng.range(2, 5);
    spec.arcs = rng.range(1, 6);
    spec.colors = 2;
    spec.budgets = {1, 1};
    CutInstance inst = std::get<CutInstance>(gen_random(spec));
    bool direct = brute_solve_mbcut(inst).has_value();
    bool weighted =
        brute_solve_weighted(mbcut2_to_weighted(inst).instance).has_value();
    REQUIRE(direct == weighted);
    yes += direct;
  }
  REQUIRE(yes > 20);
}

TEST_CASE("color expansion of weighted instances", "[reductions]") {
  ColoredDigraph one(2, 0, {{1, 2, 0}});
  CutReduction unit = weighted_to_mbcut2(
      WeightedCutInstance{one, {1}, 1, 2, 1, 1});
  REQUIRE(unit.instance.graph.arc_count() == 2);
  REQUIRE(unit.instance.graph.arc(1).colors == color_bit(1));
  REQUIRE(unit.instance.graph.arc(2).colors == color_bit(2));
  REQUIRE(unit.instance.budgets.values == std::vector<int>{1, 1});
  REQUIRE(brute_solve_mbcut(unit.instance).has_value());

  // weight 3 with weight budget 2: severing needs three second-color copies
  CutReduction heavy = weighted_to_mbcut2(
      WeightedCutInstance{one, {3}, 1, 2, 1, 2});
  REQUIRE(heavy.instance.graph.arc_count() == 4);
  REQUIRE_FALSE(brute_solve_mbcut(heavy.instance).has_value());

  ColoredDigraph path(3, 0, {{1, 2, 0}, {2, 3, 0}});
  CutReduction light = weighted_to_mbcut2(
      WeightedCutInstance{path, {1, 5}, 1, 3, 1, 1});
  auto witness = brute_solve_mbcut(light.instance);
  REQUIRE(witness.has_value());
  REQUIRE(*witness == CutSet::from_ids({1, 2}));  // both copies of arc 1
  REQUIRE(light.map.forward.at("arc1") == std::vector<int>{1, 2});
  REQUIRE(light.map.forward.at("arc2") == std::vector<int>{3, 4, 5, 6, 7, 8});

  REQUIRE_THROWS_AS(
      weighted_to_mbcut2(WeightedCutInstance{path, {1, 5}, 1, 3, 1, 1}, 4),
      GuardError);
}

TEST_CASE("weighted reduction round-trips through both directions",
          "[reductions]") {
  std::vector<CutInstance> cases;
  ColoredDigraph diamond(4, 2,
                         {{1, 2, color_bit(1)},
                          {1, 3, color_bit(2)},
                          {2, 4, color_bit(2)},
                          {3, 4, color_bit(1)}});
  cases.push_back(CutInstance{diamond, {1}, {4}, Budgets{{1, 1}}});
  ColoredDigraph pair2(2, 2, {{1, 2, color_bit(1)}, {1, 2, color_bit(1)}});
  cases.push_back(CutInstance{pair2, {1}, {2}, Budgets{{1, 1}}});
  ColoredDigraph blocked(2, 2, {{1, 2, 0}});
  cases.push_back(CutInstance{blocked, {1}, {2}, Budgets{{1, 1}}});

  for (const CutInstance& inst : cases) {
    bool source = brute_solve_mbcut(inst).has_value();
    CutReduction back = weighted_to_mbcut2(mbcut2_to_weighted(inst).instance);
    bool round = solve_mbcut(back.instance).has_value();
    REQUIRE(source == round);
  }
}

TEST_CASE("factorial family counts important cuts", "[reductions]") {
  CutInstance one = gen_factorial_family(1);
  REQUIRE(one.graph.vertex_count == 2);
  REQUIRE(one.graph.arc_count() == 1);
  REQUIRE(brute_important(one).size() == 1);

  CutInstance two = gen_factorial_family(2);
  REQUIRE(two.graph.vertex_count == 4);
  REQUIRE(two.graph.arc_count() == 4);
  REQUIRE(two.graph.arc(1).colors == color_bit(1));
  REQUIRE(two.graph.arc(2).colors == color_bit(2));
  REQUIRE(brute_important(two).size() == 2);

  CutInstance three = gen_factorial_family(3);
  REQUIRE(three.graph.vertex_count == 8);
  REQUIRE(three.graph.arc_count() == 9);
  REQUIRE(brute_important(three).size() == 6);
  CutFamily filtered = filter_important(three, enumerate_candidates(three),
                                        FilterTier::exact);
  REQUIRE(filtered.size() == 6);

  REQUIRE_THROWS_AS(gen_factorial_family(0), GuardError);
  REQUIRE_THROWS_AS(gen_factorial_family(7), GuardError);
}

TEST_CASE("random instances are reproducible", "[reductions]") {
  RandomSpec spec;
  spec.kind = RandomKind::cut;
  spec.seed = 7;
  spec.vertices = 6;
  spec.arcs = 10;
  spec.colors = 2;
  Instance a = gen_random(spec);
  Instance b = gen_random(spec);
  REQUIRE(write_instance(a) == write_instance(b));

  spec.seed = 8;
  REQUIRE(write_instance(gen_random(spec)) != write_instance(a));

  spec.kind = RandomKind::skew;
  spec.pairs = 3;
  Instance s = gen_random(spec);
  REQUIRE(std::holds_alternative<SkewInstance>(s));
  REQUIRE(std::get<SkewInstance>(s).pairs.size() == 3);

  spec.kind = RandomKind::dfas;
  REQUIRE(std::holds_alternative<DfasInstance>(gen_random(spec)));
}

TEST_CASE("random generation validates its parameters", "[reductions]") {
  RandomSpec spec;
  spec.vertices = 3;
  spec.arcs = 7;
  spec.simple = true;
  REQUIRE_THROWS_AS(gen_random(spec), ValidationError);

  spec.arcs = 6;
  CutInstance inst = std::get<CutInstance>(gen_random(spec));
  std::set<std::pair<int, int>> seen;
  for (const Arc& a : inst.graph.arcs) {
    REQUIRE(a.tail != a.head);
    REQUIRE(seen.insert({a.tail, a.head}).second);
  }

  spec.simple = false;
  spec.budgets = {2};
  REQUIRE_THROWS_AS(gen_random(spec), ValidationError);  // wrong length
  spec.budgets = {2, 0};
  REQUIRE_THROWS_AS(gen_random(spec), ValidationError);
  spec.budgets.clear();
  spec.color_density = 1.5;
  REQUIRE_THROWS_AS(gen_random(spec), ValidationError);
}

TEST_CASE("random instances agree with the oracle", "[reductions]") {
  int yes = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomSpec spec;
    spec.seed = seed;
    spec.vertices = 5;
    spec.arcs = 8;
    spec.colors = 2;
    spec.budgets = {1, 2};
    CutInstance inst = std::get<CutInstance>(gen_random(spec));
    auto fast = solve_mbcut(inst);
    auto slow = brute_solve_mbcut(inst);
    REQUIRE(fast.has_value() == slow.has_value());
    yes += fast.has_value();
  }
  REQUIRE(yes > 15);
}

TEST_CASE("random weighted and chain instances", "[reductions]") {
  RandomWeightedSpec wspec;
  wspec.seed = 5;
  WeightedCutInstance w1 = gen_random_weighted(wspec);
  WeightedCutInstance w2 = gen_random_weighted(wspec);
  REQUIRE(write_instance(w1) == write_instance(w2));
  REQUIRE(w1.graph.arc_count() == wspec.arcs);
  for (std::int64_t weight : w1.weights) {
    REQUIRE(weight >= 1);
    REQUIRE(weight <= wspec.max_weight);
  }

  RandomChainSpec cspec;
  cspec.seed = 3;
  cspec.paths = 3;
  cspec.max_path_length = 3;
  ChainInstance c1 = gen_random_chain(cspec);
  REQUIRE(write_instance(c1) == write_instance(gen_random_chain(cspec)));
  REQUIRE(c1.k == 3);
  REQUIRE(static_cast<int>(c1.paths.size()) == 3);
  // solvable exactly at k = paths, so the family oracle accepts it
  auto families = brute_closest_families_chain(c1);
  REQUIRE(families.all.size() >= 1);
  REQUIRE(families.closest.size() >= 1);
}
