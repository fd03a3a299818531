#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace graphseq {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

/// Stored orientation is always tail < head.
struct Edge {
  Vertex tail;
  Vertex head;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// One end of an edge as seen from a vertex. sign is +1 when walking to
/// `neighbor` follows the stored orientation and -1 otherwise.
struct Incidence {
  Vertex neighbor;
  EdgeId edge;
  int sign;
};

class GraphError : public std::runtime_error {
 public:
  GraphError(const std::string& what, std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(what), index_(index) {}

  /// Offending input position (pair index or line number) when known.
  std::optional<std::size_t> index() const { return index_; }

 private:
  std::optional<std::size_t> index_;
};

/// Immutable finite simple graph with stable edge ids.
class Graph {
 public:
  Graph() = default;

  static Graph build(std::size_t vertex_count,
                     std::span<const std::pair<Vertex, Vertex>> pairs) {
    Graph g;
    g.adjacency_.resize(vertex_count);
    g.edges_.reserve(pairs.size());
    std::unordered_map<std::uint64_t, EdgeId> seen;
    seen.reserve(pairs.size() * 2);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto [u, w] = pairs[i];
      if (u >= vertex_count || w >= vertex_count)
        throw GraphError("edge " + std::to_string(i) + " has a vertex out of range", i);
      if (u == w) throw GraphError("edge " + std::to_string(i) + " is a loop", i);
      if (u > w) std::swap(u, w);
      if (!seen.emplace(key(u, w), static_cast<EdgeId>(i)).second)
        throw GraphError("edge " + std::to_string(i) + " duplicates an earlier edge", i);
      const auto id = static_cast<EdgeId>(g.edges_.size());
      g.edges_.push_back({u, w});
      g.adjacency_[u].push_back({w, id, +1});
      g.adjacency_[w].push_back({u, id, -1});
    }
    for (const auto& adj : g.adjacency_)
      g.max_degree_ = std::max<std::uint32_t>(g.max_degree_, static_cast<std::uint32_t>(adj.size()));
    g.lookup_ = std::move(seen);
    return g;
  }

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::uint32_t max_degree() const { return max_degree_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Incidence> neighbors(Vertex v) const { return adjacency_[v]; }
  std::uint32_t degree(Vertex v) const { return static_cast<std::uint32_t>(adjacency_[v].size()); }

  std::optional<EdgeId> find_edge(Vertex u, Vertex w) const {
    if (u == w) return std::nullopt;
    if (u > w) std::swap(u, w);
    auto it = lookup_.find(key(u, w));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::pair<Vertex, Vertex>> edge_pairs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.emplace_back(e.tail, e.head);
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
  }

 private:
  static std::uint64_t key(Vertex u, Vertex w) {
    return (static_cast<std::uint64_t>(u) << 32) | w;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::unordered_map<std::uint64_t, EdgeId> lookup_;
  std::uint32_t max_degree_ = 0;
};

inline Graph build_graph(std::size_t vertex_count,
                         const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  return Graph::build(vertex_count, pairs);
}

/// Exact BFS distances from `source`; entries beyond `cap` are kUnreached.
inline std::vector<std::uint32_t> bfs_distance(const Graph& g, Vertex source,
                                               std::uint32_t cap = kUnreached) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    if (dist[u] >= cap) continue;
    for (const auto& inc : g.neighbors(u)) {
      if (dist[inc.neighbor] != kUnreached) continue;
      dist[inc.neighbor] = dist[u] + 1;
      queue.push_back(inc.neighbor);
    }
  }
  return dist;
}

/// Multi-source variant: distance to the nearest source.
inline std::vector<std::uint32_t> bfs_distance(const Graph& g, std::span<const Vertex> sources) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
  std::vector<Vertex> queue;
  for (Vertex s : sources) {
    if (dist[s] == kUnreached) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (const auto& inc : g.neighbors(u)) {
      if (dist[inc.neighbor] != kUnreached) continue;
      dist[inc.neighbor] = dist[u] + 1;
      queue.push_back(inc.neighbor);
    }
  }
  return dist;
}

/// Length of a shortest cycle; nullopt for forests.
inline std::optional<std::uint32_t> girth(const Graph& g) {
  std::uint32_t best = kUnreached;
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
  std::vector<EdgeId> parent_edge(g.vertex_count());
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    queue.clear();
    queue.push_back(s);
    dist[s] = 0;
    parent_edge[s] = kUnreached;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      if (best != kUnreached && 2 * dist[u] + 1 >= best) break;
      for (const auto& inc : g.neighbors(u)) {
        if (inc.edge == parent_edge[u]) continue;
        if (dist[inc.neighbor] == kUnreached) {
          dist[inc.neighbor] = dist[u] + 1;
          parent_edge[inc.neighbor] = inc.edge;
          queue.push_back(inc.neighbor);
        } else {
          best = std::min(best, dist[u] + dist[inc.neighbor] + 1);
        }
      }
    }
    for (Vertex v : queue) dist[v] = kUnreached;
  }
  if (best == kUnreached) return std::nullopt;
  return best;
}

/// Component id per vertex, numbered by lowest vertex id.
inline std::vector<std::uint32_t> connected_components(const Graph& g, std::size_t* count = nullptr) {
  std::vector<std::uint32_t> comp(g.vertex_count(), kUnreached);
  std::uint32_t next = 0;
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] != kUnreached) continue;
    comp[s] = next;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (const auto& inc : g.neighbors(queue[head]))
        if (comp[inc.neighbor] == kUnreached) {
          comp[inc.neighbor] = next;
          queue.push_back(inc.neighbor);
        }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

inline std::size_t component_count(const Graph& g) {
  std::size_t count = 0;
  connected_components(g, &count);
  return count;
}

inline bool is_connected(const Graph& g) { return component_count(g) <= 1; }

inline bool is_tree(const Graph& g) {
  return g.vertex_count() > 0 && is_connected(g) && g.edge_count() + 1 == g.vertex_count();
}

/// BFS forest from the lowest-id root of each component; edge ids ascending.
inline std::vector<EdgeId> spanning_forest(const Graph& g) {
  std::vector<char> visited(g.vertex_count(), 0);
  std::vector<EdgeId> forest;
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (visited[s]) continue;
    visited[s] = 1;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (const auto& inc : g.neighbors(queue[head]))
        if (!visited[inc.neighbor]) {
          visited[inc.neighbor] = 1;
          forest.push_back(inc.edge);
          queue.push_back(inc.neighbor);
        }
  }
  std::sort(forest.begin(), forest.end());
  return forest;
}

/// Subgraph on the same vertex set keeping the given edges (in the given order).
inline Graph edge_subgraph(const Graph& g, std::span<const EdgeId> keep) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(keep.size());
  for (EdgeId e : keep) pairs.emplace_back(g.edge(e).tail, g.edge(e).head);
  return Graph::build(g.vertex_count(), pairs);
}

/// Same vertex set, E(G) followed by the edges of H not already in G.
inline Graph graph_union(const Graph& g, const Graph& h) {
  if (g.vertex_count() != h.vertex_count())
    throw GraphError("graph_union: vertex counts differ (" + std::to_string(g.vertex_count()) +
                     " vs " + std::to_string(h.vertex_count()) + ")");
  auto pairs = g.edge_pairs();
  for (const auto& e : h.edges())
    if (!g.find_edge(e.tail, e.head)) pairs.emplace_back(e.tail, e.head);
  return Graph::build(g.vertex_count(), pairs);
}

struct Domination {
  /// Least L >= 1 with d_G(x,y) <= L for every H-edge (x,y); nullopt = unbounded.
  std::optional<std::uint32_t> constant;
  /// An H-edge realizing the constant, or one whose endpoints G cannot connect.
  std::optional<EdgeId> witness_edge;
};

/// Checks every H-edge against G-distances; by the triangle inequality this
/// bounds d_G(x,y) <= L * d_H(x,y) for all pairs.
inline Domination domination_detail(const Graph& g, const Graph& h) {
  if (g.vertex_count() != h.vertex_count())
    throw GraphError("domination_constant: vertex counts differ");
  Domination out{1, std::nullopt};
  std::vector<std::vector<std::pair<Vertex, EdgeId>>> by_source(h.vertex_count());
  for (EdgeId e = 0; e < h.edge_count(); ++e)
    by_source[h.edge(e).tail].emplace_back(h.edge(e).head, e);
  for (Vertex s = 0; s < h.vertex_count(); ++s) {
    if (by_source[s].empty()) continue;
    const auto dist = bfs_distance(g, s);
    for (auto [target, e] : by_source[s]) {
      if (dist[target] == kUnreached) return {std::nullopt, e};
      const std::uint32_t d = dist[target];
      if (d > *out.constant || (d == *out.constant && (!out.witness_edge || e < *out.witness_edge))) {
        out.constant = d;
        out.witness_edge = e;
      }
    }
  }
  return out;
}

inline std::optional<std::uint32_t> domination_constant(const Graph& g, const Graph& h) {
  return domination_detail(g, h).constant;
}

/// Greedy maximal q-net scanning `order` (ascending ids when empty): points are
/// pairwise at distance >= q and every vertex lies within distance q of one.
inline std::vector<Vertex> max_q_net(const Graph& g, std::uint32_t q,
                                     std::span<const Vertex> order = {}) {
  if (q < 1) throw GraphError("max_q_net: q must be >= 1");
  if (!is_connected(g)) throw GraphError("max_q_net: graph is disconnected");
  std::vector<char> blocked(g.vertex_count(), 0);
  std::vector<Vertex> net;
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
  std::vector<Vertex> queue;
  auto consider = [&](Vertex v) {
    if (blocked[v]) return;
    net.push_back(v);
    queue.assign(1, v);
    dist[v] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      blocked[u] = 1;
      if (dist[u] + 1 >= q) continue;
      for (const auto& inc : g.neighbors(u))
        if (dist[inc.neighbor] == kUnreached) {
          dist[inc.neighbor] = dist[u] + 1;
          queue.push_back(inc.neighbor);
        }
    }
    for (Vertex u : queue) dist[u] = kUnreached;
  };
  if (order.empty()) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) consider(v);
  } else {
    for (Vertex v : order) consider(v);
  }
  std::sort(net.begin(), net.end());
  return net;
}

}  // namespace graphseq
