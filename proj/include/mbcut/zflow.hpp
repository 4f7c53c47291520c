#pragma once

// Bounded max-flow certificates for cut-respecting flows.
//
// Arcs inside the deletable set Z have capacity 1; arcs outside Z cannot be
// cut and behave as unbounded-capacity arcs. Everything is deterministic:
// augmenting searches are breadth-first in arc-id order, path decomposition
// walks arcs in ascending id order.

#include <optional>
#include <vector>

#include "mbcut/graph.hpp"

namespace mbcut {

struct FlowCertificate {
  int lambda = 0;                       // minimum Z-respecting cut size
  std::vector<std::vector<int>> paths;  // arc ids along each flow path
  std::vector<int> bottleneck;          // arcs in some minimum cut, ascending
  CutSet closest;                       // the minimum cut closest to Y
};

namespace detail {

// Iterative Tarjan over an explicit adjacency list; returns component ids.
inline std::vector<int> strong_components(
    const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack, frame_v,
      frame_i;
  std::vector<char> on_stack(n, 0);
  int next_index = 0, next_comp = 0;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    frame_v.assign(1, root);
    frame_i.assign(1, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frame_v.empty()) {
      int v = frame_v.back();
      if (frame_i.back() < static_cast<int>(adj[v].size())) {
        int w = adj[v][frame_i.back()++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frame_v.push_back(w);
          frame_i.push_back(0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = next_comp;
            if (w == v) break;
          }
          ++next_comp;
        }
        frame_v.pop_back();
        frame_i.pop_back();
        if (!frame_v.empty()) {
          int parent = frame_v.back();
          low[parent] = std::min(low[parent], low[v]);
        }
      }
    }
  }
  return comp;
}

}  // namespace detail

// Flow certificate for the X-Y cut problem restricted to deletable arcs Z.
// Returns nullopt when no Z-respecting cut of size <= k exists (the flow
// exceeded k units). X and Y must be disjoint. Runs in O(k (n + m)).
inline std::optional<FlowCertificate> max_flow_z(const ColoredDigraph& g,
                                                 std::span<const int> x,
                                                 std::span<const int> y,
                                                 const EdgeSet& z, int k) {
  if (k < 0) return std::nullopt;
  const int n = g.vertex_count;
  const int m = g.arc_count();
  std::vector<char> in_y(n + 1, 0);
  for (int v : y) {
    if (v < 1 || v > n) throw ValidationError("y vertex out of range");
    in_y[v] = 1;
  }
  std::vector<int> seeds(x.begin(), x.end());
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  for (int v : seeds) {
    if (v < 1 || v > n) throw ValidationError("x vertex out of range");
    if (in_y[v]) throw ValidationError("x and y sets must be disjoint");
  }

  std::vector<int> flow(m + 1, 0);
  std::vector<int> parent_arc(n + 1, 0);
  std::vector<signed char> parent_dir(n + 1, 0);
  std::vector<char> seen(n + 1, 0);
  std::vector<int> queue;

  // One shortest augmenting path; forward residual on unsaturated or
  // uncuttable arcs, backward residual on flow-carrying arcs. Y vertices are
  // absorbing: the search stops at the first one discovered.
  auto augment = [&]() -> bool {
    std::fill(seen.begin(), seen.end(), 0);
    queue.clear();
    for (int v : seeds) {
      seen[v] = 1;
      queue.push_back(v);
    }
    int found = 0;
    for (std::size_t head = 0; head < queue.size() && !found; ++head) {
      int v = queue[head];
      for (int id : g.out[v]) {
        if (z.contains(id) && flow[id] >= 1) continue;
        int to = g.arc(id).head;
        if (seen[to]) continue;
        seen[to] = 1;
        parent_arc[to] = id;
        parent_dir[to] = 1;
        if (in_y[to]) {
          found = to;
          break;
        }
        queue.push_back(to);
      }
      if (found) break;
      for (int id : g.in[v]) {
        if (flow[id] <= 0) continue;
        int to = g.arc(id).tail;
        if (seen[to]) continue;
        seen[to] = 1;
        parent_arc[to] = id;
        parent_dir[to] = -1;
        if (in_y[to]) {
          found = to;
          break;
        }
        queue.push_back(to);
      }
    }
    if (!found) return false;
    int v = found;
    while (true) {
      bool at_seed = false;
      for (int s : seeds) at_seed = at_seed || s == v;
      if (at_seed) break;
      int id = parent_arc[v];
      if (parent_dir[v] > 0) {
        ++flow[id];
        v = g.arc(id).tail;
      } else {
        --flow[id];
        v = g.arc(id).head;
      }
    }
    return true;
  };

  int lambda = 0;
  while (lambda <= k && augment()) ++lambda;
  if (lambda > k) return std::nullopt;

  FlowCertificate cert;
  cert.lambda = lambda;

  // Decompose the flow into unit paths, cancelling any circulation met on
  // the way. Cursors only ever skip arcs whose remaining flow reached zero.
  std::vector<int> remaining = flow;
  std::vector<std::size_t> cursor(n + 1, 0);
  std::vector<int> pos(n + 1, -1);
  std::vector<int> path_arcs, path_verts;
  for (int seed : seeds) {
    while (true) {
      path_arcs.clear();
      path_verts.assign(1, seed);
      pos[seed] = 0;
      int current = seed;
      bool emitted = false;
      while (true) {
        auto& cur = cursor[current];
        const auto& outs = g.out[current];
        while (cur < outs.size() && remaining[outs[cur]] == 0) ++cur;
        if (cur == outs.size()) {
          if (!path_arcs.empty()) {
            throw InternalError("flow decomposition lost conservation");
          }
          break;
        }
        int id = outs[cur];
        --remaining[id];
        int to = g.arc(id).head;
        if (pos[to] >= 0 && !in_y[to]) {
          // Cancelled a flow cycle: drop the loop segment.
          int keep = pos[to];
          for (std::size_t i = keep + 1; i < path_verts.size(); ++i) {
            pos[path_verts[i]] = -1;
          }
          path_verts.resize(keep + 1);
          path_arcs.resize(keep);
          current = to;
          continue;
        }
        path_arcs.push_back(id);
        path_verts.push_back(to);
        pos[to] = static_cast<int>(path_verts.size()) - 1;
        current = to;
        if (in_y[current]) {
          cert.paths.push_back(path_arcs);
          emitted = true;
          break;
        }
      }
      for (int v : path_verts) pos[v] = -1;
      if (!emitted) break;
    }
  }
  if (static_cast<int>(cert.paths.size()) != lambda) {
    throw InternalError("flow decomposition produced " +
                        std::to_string(cert.paths.size()) + " paths for flow " +
                        std::to_string(lambda));
  }

  // Residual graph with explicit source/sink hubs (nodes 0 and n+1); an arc
  // belongs to some minimum cut exactly when it is saturated and its ends
  // fall into different strongly connected components here.
  std::vector<long long> net(n + 2, 0);
  for (int id = 1; id <= m; ++id) {
    if (flow[id] > 0) {
      net[g.arc(id).tail] += flow[id];
      net[g.arc(id).head] -= flow[id];
    }
  }
  std::vector<std::vector<int>> adj(n + 2);
  for (int id = 1; id <= m; ++id) {
    const Arc& a = g.arc(id);
    if (!(z.contains(id) && flow[id] >= 1)) adj[a.tail].push_back(a.head);
    if (flow[id] > 0) adj[a.head].push_back(a.tail);
  }
  const int sink_hub = n + 1;
  for (int v : seeds) {
    adj[0].push_back(v);
    if (net[v] > 0) adj[v].push_back(0);
  }
  for (int v = 1; v <= n; ++v) {
    if (in_y[v]) {
      adj[v].push_back(sink_hub);
      if (net[v] < 0) adj[sink_hub].push_back(v);
    }
  }
  auto comp = detail::strong_components(adj);
  for (int id = 1; id <= m; ++id) {
    const Arc& a = g.arc(id);
    if (z.contains(id) && flow[id] >= 1 && comp[a.tail] != comp[a.head]) {
      cert.bottleneck.push_back(id);
    }
  }

  // Closest-to-Y minimum cut: the last bottleneck arc of every path.
  EdgeSet in_b(m);
  for (int id : cert.bottleneck) in_b.insert(id);
  std::vector<int> closest_ids;
  for (const auto& path : cert.paths) {
    int pick = 0;
    for (int id : path) {
      if (in_b.contains(id)) pick = id;
    }
    if (pick == 0) {
      throw InternalError("flow path without a bottleneck arc");
    }
    closest_ids.push_back(pick);
  }
  cert.closest = CutSet::from_ids(std::move(closest_ids));
  if (cert.closest.size() != lambda) {
    throw InternalError("closest cut size differs from the flow value");
  }
  return cert;
}

}  // namespace mbcut
