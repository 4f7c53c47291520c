#include <catch2/catch_amalgamated.hpp>

#include "mbcut/graph.hpp"
#include "mbcut/oracle.hpp"
#include "mbcut/rng.hpp"
#include "mbcut/zflow.hpp"

using namespace mbcut;

namespace {

EdgeSet all_arcs(const ColoredDigraph& g) {
  EdgeSet z(g.arc_count());
  for (int id = 1; id <= g.arc_count(); ++id) z.insert(id);
  return z;
}

}  // namespace

TEST_CASE("one arc into a parallel pair has flow value one", "[zflow]") {
  // 1 -> 2 followed by two parallel 2 -> 3 arcs; the single entry arc is the
  // unique minimum and it is both the bottleneck and the closest cut.
  ColoredDigraph g(3, 1,
                   {{1, 2, color_bit(1)},
                    {2, 3, color_bit(1)},
                    {2, 3, color_bit(1)}});
  std::vector<int> x{1}, y{3};
  auto cert = max_flow_z(g, x, y, all_arcs(g), 3);
  REQUIRE(cert.has_value());
  CHECK(cert->lambda == 1);
  CHECK(cert->bottleneck == std::vector<int>{1});
  CHECK(cert->closest == CutSet::from_ids({1}));
  REQUIRE(cert->paths.size() == 1);
  CHECK(cert->paths[0].front() == 1);

  auto brute = brute_min_z_cuts(g, x, y, all_arcs(g), 3);
  CHECK(brute.lambda == 1);
  REQUIRE(brute.cuts.size() == 1);
  CHECK(brute.cuts[0] == cert->closest);
}

TEST_CASE("uncuttable arcs make the flow exceed every k", "[zflow]") {
  ColoredDigraph g(2, 0, {{1, 2, 0}});
  std::vector<int> x{1}, y{2};
  CHECK_FALSE(max_flow_z(g, x, y, g.colored_arcs(), 5).has_value());
}

TEST_CASE("negative k and unreachable targets are handled", "[zflow]") {
  ColoredDigraph g(3, 1, {{1, 2, color_bit(1)}});
  std::vector<int> x{1}, y{3};
  CHECK_FALSE(max_flow_z(g, x, y, all_arcs(g), -1).has_value());
  auto cert = max_flow_z(g, x, y, all_arcs(g), 0);
  REQUIRE(cert.has_value());
  CHECK(cert->lambda == 0);
  CHECK(cert->paths.empty());
  CHECK(cert->bottleneck.empty());
  CHECK(cert->closest.empty());
}

TEST_CASE("overlapping terminals are rejected", "[zflow]") {
  ColoredDigraph g(2, 1, {{1, 2, color_bit(1)}});
  std::vector<int> x{1, 2}, y{2};
  REQUIRE_THROWS_AS(max_flow_z(g, x, y, all_arcs(g), 1), ValidationError);
}

TEST_CASE("arcs outside Z carry flow without capacity", "[zflow]") {
  // 1 -> 2 -> 3 where only the first arc is in Z.
  ColoredDigraph g(3, 1, {{1, 2, color_bit(1)}, {2, 3, 0}});
  std::vector<int> x{1}, y{3};
  EdgeSet z(g.arc_count());
  z.insert(1);
  auto cert = max_flow_z(g, x, y, z, 2);
  REQUIRE(cert.has_value());
  CHECK(cert->lambda == 1);
  CHECK(cert->closest == CutSet::from_ids({1}));
  // With Z = {2} the second arc alone is the minimum Z-cut.
  EdgeSet z2(g.arc_count());
  z2.insert(2);
  auto cert2 = max_flow_z(g, x, y, z2, 2);
  REQUIRE(cert2.has_value());
  CHECK(cert2->lambda == 1);
  CHECK(cert2->closest == CutSet::from_ids({2}));
}

TEST_CASE("augmentation uses residual arcs when needed", "[zflow]") {
  // Hand-checked: the breadth-first round finds 1->2->3->6 first, and the
  // second augmenting path must push flow back across arc 2.
  ColoredDigraph g(6, 1,
                   {{1, 2, color_bit(1)},
                    {2, 3, color_bit(1)},
                    {3, 6, color_bit(1)},
                    {1, 4, color_bit(1)},
                    {4, 3, color_bit(1)},
                    {2, 5, color_bit(1)},
                    {5, 6, color_bit(1)}});
  std::vector<int> x{1}, y{6};
  auto cert = max_flow_z(g, x, y, all_arcs(g), 7);
  REQUIRE(cert.has_value());
  CHECK(cert->lambda == 2);
  CHECK(cert->bottleneck == std::vector<int>{1, 3, 4, 5, 6, 7});
  CHECK(cert->closest == CutSet::from_ids({3, 7}));

  auto brute = brute_min_z_cuts(g, x, y, all_arcs(g), 7);
  REQUIRE(brute.lambda == 2);
  EdgeSet union_of_cuts(g.arc_count());
  for (const auto& cut : brute.cuts) {
    for (int id : cut.edges) union_of_cuts.insert(id);
  }
  CHECK(union_of_cuts.ids() == cert->bottleneck);
}

TEST_CASE("flow certificates agree with brute force on random graphs",
          "[zflow]") {
  Xoshiro256ss rng(20260817);
  int solved = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + static_cast<int>(rng.below(5));  // 2..6
    int m = static_cast<int>(rng.below(11));     // 0..10
    std::vector<Arc> arcs;
    for (int i = 0; i < m; ++i) {
      int tail = 1 + static_cast<int>(rng.below(n));
      int head = 1 + static_cast<int>(rng.below(n));
      arcs.push_back({tail, head, color_bit(1)});
    }
    ColoredDigraph g(n, 1, std::move(arcs));
    EdgeSet z(g.arc_count());
    for (int id = 1; id <= g.arc_count(); ++id) {
      if (rng.below(4) != 0) z.insert(id);  // ~75% of arcs are in Z
    }
    std::vector<int> x{1}, y{n};

    auto brute = brute_min_z_cuts(g, x, y, z, g.arc_count());
    auto cert = max_flow_z(g, x, y, z, g.arc_count());

    CAPTURE(trial, n, m);
    if (brute.lambda < 0) {
      CHECK_FALSE(cert.has_value());
      continue;
    }
    ++solved;
    REQUIRE(cert.has_value());
    CHECK(cert->lambda == brute.lambda);

    // Below the flow value the call must report failure.
    if (brute.lambda > 0) {
      CHECK_FALSE(max_flow_z(g, x, y, z, brute.lambda - 1).has_value());
    }

    // The bottleneck is exactly the union of all minimum cuts.
    EdgeSet union_of_cuts(g.arc_count());
    for (const auto& cut : brute.cuts) {
      for (int id : cut.edges) union_of_cuts.insert(id);
    }
    CHECK(union_of_cuts.ids() == cert->bottleneck);

    // The closest cut is a minimum cut whose source side contains every
    // other minimum cut's source side.
    CHECK(std::find(brute.cuts.begin(), brute.cuts.end(), cert->closest) !=
          brute.cuts.end());
    EdgeSet closest_set = cert->closest.to_set(g.arc_count());
    auto closest_reach = reachable_mask(g, x, &closest_set);
    for (const auto& cut : brute.cuts) {
      EdgeSet cut_set = cut.to_set(g.arc_count());
      auto cut_reach = reachable_mask(g, x, &cut_set);
      for (int v = 1; v <= n; ++v) {
        if (cut_reach[v]) CHECK(closest_reach[v]);
      }
    }

    // Paths fit together: consecutive arcs, start in X, end in Y, and no
    // Z arc is used twice.
    REQUIRE(static_cast<int>(cert->paths.size()) == cert->lambda);
    std::vector<int> z_use(g.arc_count() + 1, 0);
    for (const auto& path : cert->paths) {
      REQUIRE_FALSE(path.empty());
      CHECK(g.arc(path.front()).tail == 1);
      CHECK(g.arc(path.back()).head == n);
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        CHECK(g.arc(path[i]).head == g.arc(path[i + 1]).tail);
      }
      for (int id : path) {
        if (z.contains(id)) {
          ++z_use[id];
          CHECK(z_use[id] <= 1);
        }
      }
    }
  }
  // Make sure the sweep is not vacuous.
  CHECK(solved > 50);
}
