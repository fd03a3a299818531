#pragma once

// Enumeration of short simple cycles as signed edge vectors.

#include <graphseq/graph.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace graphseq {

/// Signed edge vector of a closed walk. Entries are sorted by edge id; for
/// simple cycles every coefficient is +1 or -1.
struct CycleVector {
  std::vector<std::pair<EdgeId, int>> entries;
  /// Canonical vertex sequence (minimum vertex first, smaller neighbor second).
  std::vector<Vertex> vertices;
  std::uint32_t length = 0;
};

/// Wall-clock budget for one computation cell; default never expires.
struct Deadline {
  std::optional<std::chrono::steady_clock::time_point> at;

  static Deadline after(std::chrono::duration<double> budget) {
    return {std::chrono::steady_clock::now() +
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(budget)};
  }
  bool expired() const { return at && std::chrono::steady_clock::now() >= *at; }
};

enum class EnumerationStatus { Completed, StoppedByVisitor, TimedOut };

/// Boundary of a signed edge chain: net signed count per vertex.
inline std::vector<long long> chain_boundary(const Graph& g,
                                             const std::vector<std::pair<EdgeId, int>>& chain) {
  std::vector<long long> boundary(g.vertex_count(), 0);
  for (auto [e, c] : chain) {
    boundary[g.edge(e).head] += c;
    boundary[g.edge(e).tail] -= c;
  }
  return boundary;
}

namespace detail {

class CycleSearch {
 public:
  CycleSearch(const Graph& g, const std::function<bool(const CycleVector&)>& visit,
              const Deadline& deadline)
      : g_(g), visit_(visit), deadline_(deadline), dist_(g.vertex_count(), kUnreached),
        on_path_(g.vertex_count(), 0) {}

  EnumerationStatus run(std::uint32_t q) {
    for (std::uint32_t len = 3; len <= q; ++len) {
      if (len > g_.vertex_count()) break;
      for (Vertex root = 0; root < g_.vertex_count(); ++root) {
        if (auto st = rooted(root, len); st != EnumerationStatus::Completed) return st;
      }
    }
    return EnumerationStatus::Completed;
  }

 private:
  // Cycles of exactly `len` edges whose minimum vertex is `root`.
  EnumerationStatus rooted(Vertex root, std::uint32_t len) {
    root_ = root;
    len_ = len;
    // Distances within the vertices >= root, capped at len / 2.
    touched_.assign(1, root);
    dist_[root] = 0;
    const std::uint32_t radius = len / 2;
    for (std::size_t head = 0; head < touched_.size(); ++head) {
      const Vertex u = touched_[head];
      if (dist_[u] >= radius) continue;
      for (const auto& inc : g_.neighbors(u))
        if (inc.neighbor > root && dist_[inc.neighbor] == kUnreached) {
          dist_[inc.neighbor] = dist_[u] + 1;
          touched_.push_back(inc.neighbor);
        }
    }
    path_.assign(1, root);
    steps_.clear();
    on_path_[root] = 1;
    status_ = EnumerationStatus::Completed;
    extend(root);
    on_path_[root] = 0;
    for (Vertex v : touched_) dist_[v] = kUnreached;
    return status_;
  }

  // Returns false once the search must stop.
  bool extend(Vertex u) {
    if ((++ticks_ & 0xFFF) == 0 && deadline_.expired()) {
      status_ = EnumerationStatus::TimedOut;
      return false;
    }
    const auto edges_so_far = static_cast<std::uint32_t>(path_.size() - 1);
    if (path_.size() == len_) {
      if (path_[1] > path_.back()) return true;
      for (const auto& inc : g_.neighbors(u)) {
        if (inc.neighbor != root_) continue;
        steps_.push_back(inc);
        const bool go_on = emit();
        steps_.pop_back();
        return go_on;
      }
      return true;
    }
    const std::uint32_t remaining_after = len_ - edges_so_far - 1;
    for (const auto& inc : g_.neighbors(u)) {
      const Vertex w = inc.neighbor;
      if (w <= root_ || on_path_[w]) continue;
      if (dist_[w] == kUnreached || dist_[w] > remaining_after) continue;
      path_.push_back(w);
      steps_.push_back(inc);
      on_path_[w] = 1;
      const bool go_on = extend(w);
      on_path_[w] = 0;
      steps_.pop_back();
      path_.pop_back();
      if (!go_on) return false;
    }
    return true;
  }

  bool emit() {
    CycleVector cycle;
    cycle.length = len_;
    cycle.vertices = path_;
    cycle.entries.reserve(steps_.size());
    for (const auto& inc : steps_) cycle.entries.emplace_back(inc.edge, inc.sign);
    std::sort(cycle.entries.begin(), cycle.entries.end());
    if (!visit_(cycle)) {
      status_ = EnumerationStatus::StoppedByVisitor;
      return false;
    }
    return true;
  }

  const Graph& g_;
  const std::function<bool(const CycleVector&)>& visit_;
  const Deadline& deadline_;
  std::vector<std::uint32_t> dist_;
  std::vector<char> on_path_;
  std::vector<Vertex> touched_;
  std::vector<Vertex> path_;
  std::vector<Incidence> steps_;
  Vertex root_ = 0;
  std::uint32_t len_ = 0;
  std::uint64_t ticks_ = 0;
  EnumerationStatus status_ = EnumerationStatus::Completed;
};

}  // namespace detail

/// Streams every simple cycle of length <= q exactly once, in nondecreasing
/// length, then by minimum vertex. The visitor returns false to stop early.
inline EnumerationStatus enumerate_short_cycles(const Graph& g, std::uint32_t q,
                                                const std::function<bool(const CycleVector&)>& visit,
                                                const Deadline& deadline = {}) {
  detail::CycleSearch search(g, visit, deadline);
  return search.run(q);
}

inline std::vector<CycleVector> short_cycles(const Graph& g, std::uint32_t q) {
  std::vector<CycleVector> out;
  enumerate_short_cycles(g, q, [&](const CycleVector& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

/// |E| - |V| + #components.
inline std::size_t cyclomatic_number(const Graph& g) {
  return g.edge_count() + component_count(g) - g.vertex_count();
}

}  // namespace graphseq
