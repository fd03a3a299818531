#pragma once

// Slow, independent reference computations used as test oracles.

#include <graphseq/graph.hpp>
#include <graphseq/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using graphseq::Graph;
using graphseq::Rational;
using graphseq::Vertex;

inline Graph torus(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y) {
      e.emplace_back(x * n + y, ((x + 1) % n) * n + y);
      e.emplace_back(x * n + y, x * n + (y + 1) % n);
    }
  return graphseq::build_graph(n * n, e);
}

/// Torus plus the (1,1) diagonals.
inline Graph torus_diag(std::size_t n) {
  auto e = torus(n).edge_pairs();
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y) e.emplace_back(x * n + y, ((x + 1) % n) * n + (y + 1) % n);
  return graphseq::build_graph(n * n, e);
}

/// Floyd-Warshall all-pairs distances; unreachable = max.
inline std::vector<std::vector<std::uint32_t>> all_pairs(const Graph& g) {
  const auto n = g.vertex_count();
  const auto inf = std::numeric_limits<std::uint32_t>::max() / 4;
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, inf));
  for (Vertex v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& e : g.edges()) d[e.tail][e.head] = d[e.head][e.tail] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (auto& x : row)
      if (x >= inf) x = std::numeric_limits<std::uint32_t>::max();
  return d;
}

/// Signed edge vectors of all simple cycles of length <= q, found by
/// testing every edge subset for being a single 2-regular component.
/// Only for graphs with at most ~20 edges.
inline std::vector<std::vector<int>> cycles_by_subsets(const Graph& g, std::size_t q) {
  const auto m = g.edge_count();
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size < 3 || size > q) continue;
    std::vector<int> degree(g.vertex_count(), 0);
    for (std::size_t e = 0; e < m; ++e)
      if (mask >> e & 1) {
        ++degree[g.edge(e).tail];
        ++degree[g.edge(e).head];
      }
    if (std::any_of(degree.begin(), degree.end(), [](int d) { return d != 0 && d != 2; })) continue;
    // walk the cycle from its first edge, orienting as we go
    std::vector<int> vec(m, 0);
    std::size_t first = 0;
    while (!(mask >> first & 1)) ++first;
    Vertex start = g.edge(first).tail, at = g.edge(first).head;
    vec[first] = 1;
    std::size_t walked = 1, prev = first;
    while (at != start) {
      bool moved = false;
      for (std::size_t e = 0; e < m && !moved; ++e) {
        if (!(mask >> e & 1) || e == prev) continue;
        if (g.edge(e).tail == at) {
          vec[e] = 1;
          at = g.edge(e).head;
          moved = true;
        } else if (g.edge(e).head == at) {
          vec[e] = -1;
          at = g.edge(e).tail;
          moved = true;
        }
        if (moved) prev = e;
      }
      ++walked;
      if (!moved || walked > size) break;
    }
    if (walked == size && at == start) out.push_back(vec);
  }
  return out;
}

/// Dense Gaussian elimination over Q with exact rationals.
inline std::size_t dense_rank_q(std::vector<std::vector<Rational>> a) {
  std::size_t rank = 0;
  const auto cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < a.size() && a[pivot][c] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t dense_rank_p(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  std::size_t rank = 0;
  const auto cols = a.empty() ? 0 : a[0].size();
  auto inv = [p](std::int64_t x) {
    std::int64_t r = 1, b = x % p, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  for (auto& row : a)
    for (auto& x : row) x = ((x % p) + p) % p;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < a.size() && a[pivot][c] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[pivot], a[rank]);
    const auto iv = inv(a[rank][c]);
    for (auto& x : a[rank]) x = x * iv % p;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const auto f = a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] = ((a[r][k] - f * a[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank_q(const std::vector<std::vector<int>>& rows) {
  std::vector<std::vector<Rational>> a;
  for (const auto& r : rows) a.emplace_back(r.begin(), r.end());
  return dense_rank_q(a);
}

inline std::size_t rank_p(const std::vector<std::vector<int>>& rows, std::int64_t p) {
  std::vector<std::vector<std::int64_t>> a;
  for (const auto& r : rows) a.emplace_back(r.begin(), r.end());
  return dense_rank_p(a, p);
}

struct Expansion {
  Rational delta;
  std::vector<Vertex> set;
};

/// Minimum |dF|/|F| over every nonempty subset with |F| <= m (bitmask
/// enumeration, connected or not); ties to the lexicographically smallest set.
inline Expansion power_set_expansion(const Graph& g, std::size_t m) {
  const auto n = g.vertex_count();
  std::optional<Expansion> best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size > m) continue;
    std::size_t boundary = 0;
    for (const auto& e : g.edges()) boundary += ((mask >> e.tail) & 1) != ((mask >> e.head) & 1);
    std::vector<Vertex> set;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1) set.push_back(v);
    const Rational r{graphseq::BigInt(boundary), graphseq::BigInt(size)};
    if (!best || r < best->delta || (r == best->delta && set < best->set)) best = Expansion{r, set};
  }
  return *best;
}

/// Minimum over connected sets of size <= m, by growing sets one neighbor at
/// a time from every vertex and deduplicating; also returns the set count.
inline std::pair<Expansion, std::size_t> grown_set_expansion(const Graph& g, std::size_t m,
                                                             bool only_vertex_zero = false) {
  std::vector<std::vector<Vertex>> layer, all;
  for (Vertex v = 0; v < (only_vertex_zero ? 1 : g.vertex_count()); ++v) layer.push_back({v});
  while (!layer.empty()) {
    all.insert(all.end(), layer.begin(), layer.end());
    if (layer.front().size() == m) break;
    std::vector<std::vector<Vertex>> next;
    for (const auto& s : layer)
      for (Vertex v : s)
        for (const auto& inc : g.neighbors(v)) {
          if (std::binary_search(s.begin(), s.end(), inc.neighbor)) continue;
          auto t = s;
          t.insert(std::upper_bound(t.begin(), t.end(), inc.neighbor), inc.neighbor);
          next.push_back(std::move(t));
        }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    layer = std::move(next);
  }
  std::optional<Expansion> best;
  std::vector<char> in(g.vertex_count(), 0);
  for (const auto& s : all) {
    for (Vertex v : s) in[v] = 1;
    std::size_t boundary = 0;
    for (Vertex v : s)
      for (const auto& inc : g.neighbors(v)) boundary += !in[inc.neighbor];
    for (Vertex v : s) in[v] = 0;
    const Rational r{graphseq::BigInt(boundary), graphseq::BigInt(s.size())};
    if (!best || r < best->delta || (r == best->delta && s < best->set)) best = Expansion{r, s};
  }
  return {*best, all.size()};
}

/// Random connected graph with max degree <= d, built by rejection.
inline Graph random_graph(std::size_t n, std::uint32_t d, double density, std::mt19937_64& rng) {
  for (;;) {
    std::vector<std::pair<Vertex, Vertex>> e;
    std::vector<std::uint32_t> deg(n, 0);
    std::bernoulli_distribution coin(density);
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b)
        if (deg[a] < d && deg[b] < d && coin(rng)) {
          e.emplace_back(a, b);
          ++deg[a];
          ++deg[b];
        }
    auto g = graphseq::build_graph(n, e);
    const auto dist = all_pairs(g);
    bool connected = true;
    for (Vertex v = 0; v < n; ++v) connected = connected && dist[0][v] != std::numeric_limits<std::uint32_t>::max();
    if (connected) return g;
  }
}

}  // namespace oracle
