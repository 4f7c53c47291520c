#pragma once

// Small random-instance helpers shared by the unit tests. Deterministic for
// a fixed seed; every test fixes its own seed.

#include <vector>

#include "mbcut/graph.hpp"
#include "mbcut/rng.hpp"

namespace testutil {

// Random multigraph on 2..max_n vertices with up to max_m arcs. Roughly a
// quarter of the arcs stay colorless; the rest get a nonempty color subset.
inline mbcut::ColoredDigraph random_graph(mbcut::Xoshiro256ss& rng, int max_n,
                                          int max_m, int colors) {
  int n = 2 + static_cast<int>(rng.below(max_n - 1));
  int m = static_cast<int>(rng.below(max_m + 1));
  std::vector<mbcut::Arc> arcs;
  for (int i = 0; i < m; ++i) {
    mbcut::Arc a;
    a.tail = 1 + static_cast<int>(rng.below(n));
    a.head = 1 + static_cast<int>(rng.below(n));
    if (rng.below(4) != 0) {
      for (int c = 1; c <= colors; ++c) {
        if (rng.below(2) == 0) a.colors |= mbcut::color_bit(c);
      }
      if (a.colors == 0) {
        a.colors = mbcut::color_bit(1 + static_cast<int>(rng.below(colors)));
      }
    }
    arcs.push_back(a);
  }
  return mbcut::ColoredDigraph(n, colors, std::move(arcs));
}

// Random instance with X = {1}, Y = {n} and budgets in 1..max_budget.
inline mbcut::CutInstance random_cut_instance(mbcut::Xoshiro256ss& rng,
                                              int max_n, int max_m, int colors,
                                              int max_budget) {
  mbcut::ColoredDigraph g = random_graph(rng, max_n, max_m, colors);
  std::vector<int> budgets;
  for (int c = 0; c < colors; ++c) {
    budgets.push_back(1 + static_cast<int>(rng.below(max_budget)));
  }
  int n = g.vertex_count;
  return mbcut::CutInstance{std::move(g), {1}, {n},
                            mbcut::Budgets{std::move(budgets)}};
}

}  // namespace testutil
