#pragma once

// Bounded-block partitions with few cut edges, and the exact small-set
// expansion search used as the obstruction to such partitions.

#include <graphseq/graph.hpp>
#include <graphseq/parallel.hpp>
#include <graphseq/rational.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphseq {

class PartitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Partition {
  std::vector<std::uint32_t> block;  // vertex -> block id
  std::size_t block_count = 0;
  std::size_t max_block_size = 0;
  std::vector<EdgeId> cut_edges;
  Rational cut_ratio;

  std::vector<std::vector<Vertex>> blocks() const {
    std::vector<std::vector<Vertex>> out(block_count);
    for (Vertex v = 0; v < block.size(); ++v) out[block[v]].push_back(v);
    return out;
  }
};

/// Builds the partition from a raw assignment; block ids are renumbered in
/// order of their smallest vertex.
inline Partition make_partition(const Graph& g, const std::vector<std::uint32_t>& assignment) {
  if (assignment.size() != g.vertex_count())
    throw PartitionError("partition covers " + std::to_string(assignment.size()) + " of " +
                         std::to_string(g.vertex_count()) + " vertices");
  Partition p;
  std::map<std::uint32_t, std::uint32_t> renumber;
  p.block.resize(assignment.size());
  for (Vertex v = 0; v < assignment.size(); ++v) {
    auto [it, fresh] = renumber.emplace(assignment[v], static_cast<std::uint32_t>(renumber.size()));
    p.block[v] = it->second;
  }
  p.block_count = renumber.size();
  std::vector<std::size_t> sizes(p.block_count, 0);
  for (auto b : p.block) ++sizes[b];
  p.max_block_size = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (p.block[g.edge(e).tail] != p.block[g.edge(e).head]) p.cut_edges.push_back(e);
  p.cut_ratio = g.vertex_count() == 0
                    ? Rational(0)
                    : Rational(BigInt(p.cut_edges.size()), BigInt(g.vertex_count()));
  return p;
}

/// Nearest-point assignment to `centers`, ties broken by the smaller center id.
inline std::vector<std::uint32_t> nearest_center_assignment(const Graph& g,
                                                            const std::vector<Vertex>& centers) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
  std::vector<std::uint32_t> owner(g.vertex_count(), kUnreached);
  std::vector<Vertex> order;
  for (Vertex c : centers) {
    dist[c] = 0;
    owner[c] = c;
    order.push_back(c);
  }
  for (std::size_t head = 0; head < order.size(); ++head)
    for (const auto& inc : g.neighbors(order[head]))
      if (dist[inc.neighbor] == kUnreached) {
        dist[inc.neighbor] = dist[order[head]] + 1;
        order.push_back(inc.neighbor);
      }
  for (Vertex v : order) {
    if (dist[v] == 0) continue;
    for (const auto& inc : g.neighbors(v))
      if (dist[inc.neighbor] + 1 == dist[v]) owner[v] = std::min(owner[v], owner[inc.neighbor]);
  }
  return owner;
}

struct TreePartition {
  Partition partition;
  std::vector<Vertex> net;
};

/// Voronoi blocks of a maximal q-net in a tree. The net is grown greedily
/// from the vertices at depth = c (mod q) below vertex 0, for the offset c
/// giving the fewest net points.
inline TreePartition tree_partition(const Graph& tree, std::uint32_t q) {
  if (!is_tree(tree)) throw PartitionError("tree_partition: input is not a tree");
  if (q < 2) throw PartitionError("tree_partition: q must be >= 2");
  const auto depth = bfs_distance(tree, Vertex{0});
  std::vector<Vertex> best;
  for (std::uint32_t c = 0; c < q; ++c) {
    std::vector<Vertex> order(tree.vertex_count());
    for (Vertex v = 0; v < order.size(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      const bool pa = depth[a] % q == c, pb = depth[b] % q == c;
      if (pa != pb) return pa;
      return depth[a] < depth[b];
    });
    auto net = max_q_net(tree, q, order);
    if (best.empty() || net.size() < best.size()) best = std::move(net);
  }
  TreePartition out;
  out.partition = make_partition(tree, nearest_center_assignment(tree, best));
  out.net = std::move(best);
  return out;
}

/// Coordinate boxes of side s on a torus given per-vertex coordinates.
inline Partition box_partition(const Graph& torus, const std::vector<std::vector<std::int64_t>>& coordinates,
                               std::int64_t s) {
  if (coordinates.size() != torus.vertex_count())
    throw PartitionError("box_partition: coordinate count does not match the graph");
  if (s < 1) throw PartitionError("box_partition: s must be >= 1");
  if (coordinates.empty()) return make_partition(torus, {});
  const auto d = coordinates.front().size();
  std::vector<std::int64_t> side(d, 0);
  for (const auto& c : coordinates) {
    if (c.size() != d) throw PartitionError("box_partition: ragged coordinates");
    for (std::size_t i = 0; i < d; ++i) side[i] = std::max(side[i], c[i] + 1);
  }
  for (auto n : side)
    if (n % s != 0)
      throw PartitionError("box_partition: s=" + std::to_string(s) + " does not divide side " +
                           std::to_string(n));
  std::vector<std::uint32_t> assignment(torus.vertex_count());
  for (Vertex v = 0; v < assignment.size(); ++v) {
    std::int64_t id = 0;
    for (std::size_t i = 0; i < d; ++i) id = id * (side[i] / s) + coordinates[v][i] / s;
    assignment[v] = static_cast<std::uint32_t>(id);
  }
  return make_partition(torus, assignment);
}

struct CoveringFamily {
  std::vector<std::vector<Vertex>> sets;
  /// Declared slack; when absent the measured value is used.
  std::optional<Rational> omega;
  std::optional<std::size_t> size_cap;
};

struct CoveringCheck {
  Rational measured_omega;  // least omega satisfying all three ratio conditions
  Rational omega;           // declared or measured
  std::size_t size_cap = 0; // L_omega
  std::size_t covered = 0;
};

/// Verifies the covering-family conditions; throws naming the failed one.
inline CoveringCheck check_covering_family(const Graph& g, const CoveringFamily& family) {
  if (family.sets.empty()) throw PartitionError("covering family is empty");
  const auto n = g.vertex_count();
  std::vector<std::uint32_t> multiplicity(n, 0);
  for (const auto& w : family.sets) {
    if (w.empty()) throw PartitionError("covering family contains an empty set");
    std::vector<Vertex> sorted(w);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw PartitionError("covering family set repeats a vertex");
    for (Vertex v : w) {
      if (v >= n) throw PartitionError("covering family names vertex " + std::to_string(v));
      ++multiplicity[v];
    }
  }
  CoveringCheck out;
  std::vector<char> in_set(n, 0);
  Rational worst(0);
  for (const auto& w : family.sets) {
    out.size_cap = std::max(out.size_cap, w.size());
    std::size_t priv = 0, boundary = 0;
    for (Vertex v : w) {
      in_set[v] = 1;
      if (multiplicity[v] == 1) ++priv;
    }
    for (Vertex v : w)
      for (const auto& inc : g.neighbors(v))
        if (!in_set[inc.neighbor]) ++boundary;
    for (Vertex v : w) in_set[v] = 0;
    const BigInt size(w.size());
    worst = std::max(worst, Rational(BigInt(w.size() - priv), size));
    worst = std::max(worst, Rational(BigInt(boundary), size));
  }
  for (auto m : multiplicity) out.covered += m > 0;
  worst = std::max(worst, Rational(BigInt(n - out.covered), BigInt(n)));
  out.measured_omega = worst;
  out.omega = family.omega.value_or(worst);
  if (family.size_cap && *family.size_cap < out.size_cap)
    throw PartitionError("covering family: a set exceeds the size cap L_omega");
  if (family.size_cap) out.size_cap = *family.size_cap;
  if (out.omega >= 1) throw PartitionError("covering family: omega must be < 1");
  if (family.omega && worst > *family.omega) {
    // name the first violated condition
    for (const auto& w : family.sets) {
      std::size_t priv = 0;
      for (Vertex v : w) priv += multiplicity[v] == 1;
      if (Rational(BigInt(priv), BigInt(w.size())) < 1 - *family.omega)
        throw PartitionError("covering family: private part below (1-omega)|W_i|");
    }
    for (const auto& w : family.sets) {
      std::size_t boundary = 0;
      for (Vertex v : w) in_set[v] = 1;
      for (Vertex v : w)
        for (const auto& inc : g.neighbors(v)) boundary += !in_set[inc.neighbor];
      for (Vertex v : w) in_set[v] = 0;
      if (Rational(BigInt(boundary), BigInt(w.size())) > *family.omega)
        throw PartitionError("covering family: boundary exceeds omega|W_i|");
    }
    throw PartitionError("covering family: union covers less than (1-omega)|V|");
  }
  return out;
}

/// 2|S|((1-(1-w)^2) + 2w/(1-w)) with |S| = degree_bound / 2.
inline Rational covering_cut_bound(std::uint32_t degree_bound, const Rational& omega) {
  const Rational one(1);
  return Rational(degree_bound) * ((one - (one - omega) * (one - omega)) + 2 * omega / (one - omega));
}

struct CoveringPartition {
  Partition partition;
  CoveringCheck check;
  Rational bound;
  std::size_t private_blocks = 0;
  std::size_t leftover_chunks = 0;
};

/// Private parts Z_i = W_i minus the other sets, plus BFS chunks of size
/// <= L_omega over the remaining vertices.
inline CoveringPartition partition_from_covering(const Graph& g, const CoveringFamily& family) {
  CoveringPartition out;
  out.check = check_covering_family(g, family);
  const auto n = g.vertex_count();
  std::vector<std::uint32_t> multiplicity(n, 0);
  for (const auto& w : family.sets)
    for (Vertex v : w) ++multiplicity[v];
  std::vector<std::uint32_t> assignment(n, kUnreached);
  std::uint32_t next = 0;
  for (const auto& w : family.sets) {
    bool used = false;
    for (Vertex v : w)
      if (multiplicity[v] == 1) {
        assignment[v] = next;
        used = true;
      }
    if (used) {
      ++next;
      ++out.private_blocks;
    }
  }
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (assignment[s] != kUnreached) continue;
    std::size_t size = 0;
    queue.assign(1, s);
    assignment[s] = next;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      ++size;
      for (const auto& inc : g.neighbors(queue[head])) {
        if (size + (queue.size() - head - 1) >= out.check.size_cap) break;
        if (assignment[inc.neighbor] != kUnreached) continue;
        assignment[inc.neighbor] = next;
        queue.push_back(inc.neighbor);
      }
    }
    ++next;
    ++out.leftover_chunks;
  }
  out.partition = make_partition(g, assignment);
  out.bound = covering_cut_bound(g.max_degree(), out.check.omega);
  return out;
}

inline CoveringFamily read_covering_family(const nlohmann::json& j) {
  CoveringFamily f;
  const auto& sets = j.is_array() ? j : j.at("sets");
  for (const auto& s : sets) f.sets.push_back(s.get<std::vector<Vertex>>());
  if (j.is_object()) {
    if (j.contains("omega")) f.omega = rational_from_json(j.at("omega"));
    if (j.contains("size_cap")) f.size_cap = j.at("size_cap").get<std::size_t>();
  }
  return f;
}

struct PartitionValidation {
  bool pass = false;
  bool stats_consistent = false;
  std::size_t max_block_size = 0;
  std::size_t cut_edges = 0;
  Rational cut_ratio;
};

/// Recomputes block sizes and cut edges from the assignment alone.
inline PartitionValidation validate_partition(const Graph& g, const Partition& p, const Rational& epsilon,
                                              std::size_t max_block) {
  PartitionValidation out;
  if (p.block.size() != g.vertex_count()) return out;
  std::map<std::uint32_t, std::size_t> sizes;
  for (auto b : p.block) ++sizes[b];
  for (auto [b, s] : sizes) out.max_block_size = std::max(out.max_block_size, s);
  std::vector<EdgeId> cut;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (p.block[g.edge(e).tail] != p.block[g.edge(e).head]) cut.push_back(e);
  out.cut_edges = cut.size();
  out.cut_ratio = g.vertex_count() ? Rational(BigInt(cut.size()), BigInt(g.vertex_count())) : Rational(0);
  out.stats_consistent = cut == p.cut_edges && out.max_block_size == p.max_block_size &&
                         sizes.size() == p.block_count && out.cut_ratio == p.cut_ratio;
  out.pass = out.stats_consistent && out.max_block_size <= max_block && out.cut_ratio <= epsilon;
  return out;
}

inline nlohmann::json partition_json(const Partition& p) {
  return {{"block", p.block},
          {"block_count", p.block_count},
          {"max_block_size", p.max_block_size},
          {"cut_edges", p.cut_edges},
          {"cut_ratio", rational_json(p.cut_ratio)}};
}

// ---- small-set expansion ----

struct ExpansionOptions {
  std::uint32_t max_set_size_cap = 10;
  std::size_t max_vertices = 5000;
  /// Only sets containing vertex 0 are searched; exact for vertex-transitive
  /// graphs such as Cayley graphs.
  bool vertex_transitive = false;
  std::size_t jobs = 1;
};

struct ExpansionReport {
  std::uint32_t m = 0;
  Rational delta;
  std::vector<Vertex> argmin;
  std::uint64_t sets_examined = 0;  // exhaustiveness certificate
  bool vertex_transitive = false;
};

namespace detail {

struct ExpansionBest {
  std::uint64_t boundary = 0;
  std::uint64_t size = 0;  // 0 = nothing recorded yet
  std::vector<Vertex> set;  // sorted
  std::uint64_t count = 0;

  void offer(std::uint64_t b, const std::vector<Vertex>& members) {
    ++count;
    const std::uint64_t k = members.size();
    if (size != 0) {
      const auto lhs = b * size, rhs = boundary * k;
      if (lhs > rhs) return;
      if (lhs == rhs) {
        std::vector<Vertex> sorted(members);
        std::sort(sorted.begin(), sorted.end());
        if (!(sorted < set)) return;
        boundary = b;
        size = k;
        set = std::move(sorted);
        return;
      }
    }
    boundary = b;
    size = k;
    set = members;
    std::sort(set.begin(), set.end());
  }

  void merge(const ExpansionBest& other) {
    const auto total = count + other.count;
    if (other.size != 0) {
      const auto saved = count;
      offer_sorted(other.boundary, other.set);
      count = saved;
    }
    count = total;
  }

  void offer_sorted(std::uint64_t b, const std::vector<Vertex>& sorted) {
    const std::uint64_t k = sorted.size();
    if (size != 0) {
      const auto lhs = b * size, rhs = boundary * k;
      if (lhs > rhs || (lhs == rhs && !(sorted < set))) return;
    }
    boundary = b;
    size = k;
    set = sorted;
  }
};

struct ExpansionTask {
  Vertex root;
  std::vector<Vertex> members;
  std::vector<Vertex> untried;
  std::vector<Vertex> seen;
  std::uint64_t boundary;
};

// Connected sets containing `root` with all other vertices > root, each
// produced once (Redelmeier's untried-set recursion).
class ConnectedSetSearch {
 public:
  ConnectedSetSearch(const Graph& g, std::uint32_t m, std::uint32_t split_depth,
                     std::vector<ExpansionTask>* tasks)
      : g_(g), m_(m), split_depth_(split_depth), tasks_(tasks), in_set_(g.vertex_count(), 0),
        seen_(g.vertex_count(), 0) {}

  void from_root(Vertex root) {
    root_ = root;
    seen_[root] = 1;
    marked_.assign(1, root);
    recurse({root}, 0);
    seen_[root] = 0;
  }

  void resume(const ExpansionTask& task) {
    root_ = task.root;
    for (Vertex v : task.seen) seen_[v] = 1;
    for (Vertex v : task.members) in_set_[v] = 1;
    members_ = task.members;
    recurse(task.untried, task.boundary);
    for (Vertex v : task.seen) seen_[v] = 0;
    for (Vertex v : task.members) in_set_[v] = 0;
    members_.clear();
  }

  ExpansionBest best;

 private:
  void recurse(std::vector<Vertex> untried, std::uint64_t boundary) {
    while (!untried.empty()) {
      const Vertex v = untried.back();
      untried.pop_back();
      std::uint64_t inside = 0;
      for (const auto& inc : g_.neighbors(v)) inside += in_set_[inc.neighbor];
      const std::uint64_t b = boundary + g_.degree(v) - 2 * inside;
      in_set_[v] = 1;
      members_.push_back(v);
      best.offer(b, members_);
      if (members_.size() < m_) {
        std::vector<Vertex> next(untried);
        const auto mark_from = marked_.size();
        for (const auto& inc : g_.neighbors(v)) {
          const Vertex w = inc.neighbor;
          if (w > root_ && !seen_[w]) {
            seen_[w] = 1;
            marked_.push_back(w);
            next.push_back(w);
          }
        }
        if (tasks_ && members_.size() == split_depth_) {
          tasks_->push_back({root_, members_, std::move(next), marked_, b});
        } else {
          recurse(std::move(next), b);
        }
        for (auto i = mark_from; i < marked_.size(); ++i) seen_[marked_[i]] = 0;
        marked_.resize(mark_from);
      }
      members_.pop_back();
      in_set_[v] = 0;
    }
  }

  const Graph& g_;
  std::uint32_t m_;
  std::uint32_t split_depth_;
  std::vector<ExpansionTask>* tasks_;
  std::vector<char> in_set_;
  std::vector<char> seen_;
  std::vector<Vertex> members_;
  std::vector<Vertex> marked_;
  Vertex root_ = 0;
};

}  // namespace detail

/// Exact min over nonempty F with |F| <= m of |dF| / |F|. Only connected F
/// are searched: a disconnected F is no better than its best component.
/// Ties go to the lexicographically smallest sorted vertex set.
inline ExpansionReport min_small_set_expansion(const Graph& g, std::uint32_t m,
                                               const ExpansionOptions& opt = {}) {
  if (m == 0) throw PartitionError("min_small_set_expansion: m must be >= 1");
  if (m > opt.max_set_size_cap)
    throw PartitionError("min_small_set_expansion: m=" + std::to_string(m) + " exceeds the cap " +
                         std::to_string(opt.max_set_size_cap));
  if (g.vertex_count() == 0) throw PartitionError("min_small_set_expansion: empty graph");
  if (g.vertex_count() > opt.max_vertices)
    throw PartitionError("min_small_set_expansion: graph exceeds the vertex cap");

  const std::uint32_t split_depth = std::min<std::uint32_t>(m, 4);
  std::vector<detail::ExpansionTask> tasks;
  detail::ConnectedSetSearch splitter(g, m, split_depth, &tasks);
  const Vertex roots = opt.vertex_transitive ? 1 : static_cast<Vertex>(g.vertex_count());
  for (Vertex r = 0; r < roots; ++r) splitter.from_root(r);

  std::vector<detail::ExpansionBest> partial(tasks.size());
  const auto workers = std::max<std::size_t>(1, std::min(opt.jobs, tasks.size()));
  std::vector<std::vector<std::size_t>> assigned(workers);
  parallel_for(workers, workers, [&](std::size_t w) {
    detail::ConnectedSetSearch search(g, m, 0, nullptr);
    for (std::size_t i = w; i < tasks.size(); i += workers) {
      search.best = {};
      search.resume(tasks[i]);
      partial[i] = std::move(search.best);
    }
  });
  detail::ExpansionBest total = splitter.best;
  for (const auto& p : partial) total.merge(p);

  ExpansionReport rep;
  rep.m = m;
  rep.delta = Rational(BigInt(total.boundary), BigInt(total.size));
  rep.argmin = total.set;
  rep.sets_examined = total.count;
  rep.vertex_transitive = opt.vertex_transitive;
  return rep;
}

inline nlohmann::json expansion_json(const ExpansionReport& r) {
  return {{"m", r.m},
          {"delta", rational_json(r.delta)},
          {"argmin", r.argmin},
          {"sets_examined", r.sets_examined},
          {"search", r.vertex_transitive ? "sets containing vertex 0 (vertex-transitive)"
                                         : "all connected sets"}};
}

}  // namespace graphseq
