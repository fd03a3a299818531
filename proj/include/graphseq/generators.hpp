#pragma once

// Explicit and seeded random graph families.

#include <graphseq/graph.hpp>

#include <algorithm>
#include <cstdint>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphseq {

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw GraphError("cycle_graph: need n >= 3");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  return Graph::build(n, e);
}

inline Graph path_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::build(n, e);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::build(n, e);
}

inline Graph star_graph(std::size_t leaves) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::build(leaves + 1, e);
}

inline Graph petersen_graph() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return Graph::build(10, e);
}

/// Uniform random labelled tree via a Pruefer sequence.
inline Graph random_tree(std::size_t n, std::uint64_t seed) {
  if (n <= 1) return Graph::build(n, {});
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  std::vector<Vertex> code(n - 2);
  for (auto& c : code) c = pick(rng);
  std::vector<std::uint32_t> degree(n, 1);
  for (Vertex c : code) ++degree[c];
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.push(v);
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex c : code) {
    const Vertex leaf = leaves.top();
    leaves.pop();
    e.emplace_back(leaf, c);
    if (--degree[c] == 1) leaves.push(c);
  }
  const Vertex a = leaves.top();
  leaves.pop();
  e.emplace_back(a, leaves.top());
  return Graph::build(n, e);
}

/// Connected graph with maximum degree <= max_degree: a random spanning tree
/// grown under the degree bound, then up to `extra` random extra edges.
inline Graph random_connected_graph(std::size_t n, std::uint32_t max_degree, std::size_t extra,
                                    std::uint64_t seed) {
  if (max_degree < 2 && n > 2) throw GraphError("random_connected_graph: max_degree too small");
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> degree(n, 0);
  std::vector<std::pair<Vertex, Vertex>> e;
  std::vector<Vertex> open;  // tree vertices with spare degree
  if (n > 0) open.push_back(0);
  for (Vertex v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    const auto slot = pick(rng);
    const Vertex u = open[slot];
    e.emplace_back(u, v);
    if (++degree[u] == max_degree) {
      open[slot] = open.back();
      open.pop_back();
    }
    ++degree[v];
    open.push_back(v);
  }
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [a, b] : e) adj[a][b] = adj[b][a] = 1;
  std::uniform_int_distribution<Vertex> any(0, n > 0 ? static_cast<Vertex>(n - 1) : 0);
  for (std::size_t tries = 0, added = 0; added < extra && tries < 50 * (extra + 1); ++tries) {
    const Vertex a = any(rng), b = any(rng);
    if (a == b || adj[a][b] || degree[a] >= max_degree || degree[b] >= max_degree) continue;
    adj[a][b] = adj[b][a] = 1;
    ++degree[a];
    ++degree[b];
    e.emplace_back(a, b);
    ++added;
  }
  return Graph::build(n, e);
}

/// Random d-regular graph with girth >= girth_floor. Edges are added at
/// random between deficient vertices whenever the new edge closes no short
/// cycle; when that stalls, an existing edge (a,b) is swapped for (x,a),(y,b).
inline Graph random_regular_girth(std::size_t n, std::uint32_t degree, std::uint32_t girth_floor,
                                  std::uint64_t seed, std::size_t max_attempts = 200) {
  if ((n * degree) % 2 != 0) throw GraphError("random_regular_girth: n * degree must be even");
  if (degree >= n) throw GraphError("random_regular_girth: degree must be < n");
  const std::uint32_t min_gap = girth_floor > 1 ? girth_floor - 1 : 1;

  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * attempt);
    std::vector<std::vector<Vertex>> adj(n);
    std::vector<std::uint32_t> dist(n, kUnreached);
    std::vector<Vertex> queue;

    // true when d(u, w) >= min_gap, i.e. u-w closes no cycle shorter than the floor
    auto far_apart = [&](Vertex u, Vertex w) {
      if (u == w) return false;
      queue.assign(1, u);
      dist[u] = 0;
      bool ok = true;
      for (std::size_t head = 0; head < queue.size() && ok; ++head) {
        const Vertex x = queue[head];
        if (dist[x] + 1 >= min_gap) continue;
        for (Vertex y : adj[x]) {
          if (dist[y] != kUnreached) continue;
          if (y == w) {
            ok = false;
            break;
          }
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
      for (Vertex x : queue) dist[x] = kUnreached;
      return ok;
    };
    auto connect = [&](Vertex a, Vertex b) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    };
    auto disconnect = [&](Vertex a, Vertex b) {
      adj[a].erase(std::find(adj[a].begin(), adj[a].end(), b));
      adj[b].erase(std::find(adj[b].begin(), adj[b].end(), a));
    };

    std::vector<Vertex> deficient(n);
    for (Vertex v = 0; v < n; ++v) deficient[v] = v;
    auto refresh = [&] {
      deficient.erase(std::remove_if(deficient.begin(), deficient.end(),
                                     [&](Vertex v) { return adj[v].size() >= degree; }),
                      deficient.end());
    };

    std::size_t stalls = 0;
    while (!deficient.empty() && stalls < 50 * n) {
      std::uniform_int_distribution<std::size_t> pick(0, deficient.size() - 1);
      const Vertex u = deficient[pick(rng)];
      bool placed = false;
      for (int tries = 0; tries < 64 && !placed; ++tries) {
        const Vertex w = deficient[pick(rng)];
        if (w == u || std::find(adj[u].begin(), adj[u].end(), w) != adj[u].end()) continue;
        if (far_apart(u, w)) {
          connect(u, w);
          placed = true;
        }
      }
      if (!placed) {
        // swap: remove a random edge (a,b), add (u,a) and (y,b)
        ++stalls;
        std::uniform_int_distribution<Vertex> any(0, static_cast<Vertex>(n - 1));
        const Vertex a = any(rng);
        if (adj[a].empty() || a == u) continue;
        std::uniform_int_distribution<std::size_t> nb(0, adj[a].size() - 1);
        const Vertex b = adj[a][nb(rng)];
        const Vertex y = deficient[pick(rng)];
        if (b == u || b == y || a == y) continue;
        if (y == u && adj[u].size() + 2 > degree) continue;
        disconnect(a, b);
        if (std::find(adj[u].begin(), adj[u].end(), a) == adj[u].end() && far_apart(u, a)) {
          connect(u, a);
          if (std::find(adj[y].begin(), adj[y].end(), b) == adj[y].end() && far_apart(y, b)) {
            connect(y, b);
          } else {
            disconnect(u, a);
            connect(a, b);
          }
        } else {
          connect(a, b);
        }
      }
      refresh();
    }
    if (!deficient.empty()) continue;

    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex v = 0; v < n; ++v)
      for (Vertex w : adj[v])
        if (v < w) e.emplace_back(v, w);
    std::sort(e.begin(), e.end());
    return Graph::build(n, e);
  }
  throw GraphError("random_regular_girth: could not reach girth " + std::to_string(girth_floor) +
                   " for n=" + std::to_string(n));
}

}  // namespace graphseq
