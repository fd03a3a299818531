#pragma once

// Cayley graphs of finite quotients, relator-lift homology and the
// coset-compression construction.

#include <graphseq/cycle_space.hpp>
#include <graphseq/equivalence.hpp>
#include <graphseq/group.hpp>
#include <graphseq/rational.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace graphseq {

struct GeneratorSpec {
  std::string label;
  Element value;  // integer entries, reduced per quotient
};

/// Closed form for d(Gamma_n), when one is known for the family.
struct KnownRank {
  enum class Kind { None, Free, Abelian };
  Kind kind = Kind::None;
  std::size_t rank = 0;  // free rank r, or abelian rank d
};

struct TowerSpec {
  std::string family_name;
  nlohmann::json params = nlohmann::json::object();
  QuotientKind kind = QuotientKind::Abelian;
  std::size_t dim = 1;
  std::vector<GeneratorSpec> generators;
  /// Relators of a finite presentation; nullopt when none is supplied.
  std::optional<std::vector<Word>> relators;
  KnownRank known_rank;
  std::vector<std::int64_t> indices;
  std::size_t element_cap = 2'000'000;

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& g : generators) out.push_back(g.label);
    return out;
  }

  QuotientGroup quotient(std::int64_t n) const { return QuotientGroup(kind, dim, n); }

  std::size_t max_relator_length() const {
    std::size_t r = 0;
    if (relators)
      for (const auto& w : *relators) r = std::max(r, w.size());
    return r;
  }
};

/// Quotient Cayley graph with its vertex labelling. Vertices are the
/// elements sorted by their canonical entry vectors, so quotients of the
/// same group under different generating sets share vertex ids.
struct CayleyGraph {
  Graph graph;
  std::vector<Element> labels;
  Vertex identity = 0;
  /// left_action[i][v] = id of generators[i] * labels[v]
  std::vector<std::vector<Vertex>> left_action;
  std::vector<std::vector<Vertex>> left_inverse_action;
  /// Some generator acted trivially or two letters gave the same edge.
  bool collapsed = false;

  std::size_t order() const { return labels.size(); }

  Vertex apply(const Letter& l, Vertex v) const {
    return l.sign > 0 ? left_action[l.generator][v] : left_inverse_action[l.generator][v];
  }
};

namespace detail {

inline Element evaluate_word(const QuotientGroup& q, const std::vector<Element>& gens,
                             const std::vector<Element>& inverses, const Word& w) {
  Element out = q.identity();
  for (const auto& l : w) out = q.multiply(out, l.sign > 0 ? gens[l.generator] : inverses[l.generator]);
  return out;
}

/// Left-multiplication closure of {identity} under the given elements.
inline std::vector<Element> enumerate_subgroup(const QuotientGroup& q, const std::vector<Element>& gens,
                                               const std::vector<Element>& inverses, std::size_t cap) {
  std::map<Element, bool> seen;
  std::vector<Element> queue{q.identity()};
  seen.emplace(queue.front(), true);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto* set : {&gens, &inverses})
      for (const auto& s : *set) {
        Element next = q.multiply(s, queue[head]);
        if (seen.emplace(next, true).second) {
          if (queue.size() >= cap)
            throw GroupError("quotient exceeds the element cap of " + std::to_string(cap));
          queue.push_back(std::move(next));
        }
      }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

}  // namespace detail

inline CayleyGraph cayley_graph(const TowerSpec& tower, std::int64_t n) {
  if (tower.generators.empty()) throw GroupError("tower has no generators");
  const auto q = tower.quotient(n);
  std::vector<Element> gens, inverses;
  for (const auto& g : tower.generators) {
    gens.push_back(q.reduce(g.value));
    inverses.push_back(q.inverse(gens.back(), tower.element_cap));
  }
  CayleyGraph out;
  out.labels = detail::enumerate_subgroup(q, gens, inverses, tower.element_cap);
  std::map<Element, Vertex> id;
  for (Vertex v = 0; v < out.labels.size(); ++v) id.emplace(out.labels[v], v);
  out.identity = id.at(q.identity());

  out.left_action.assign(gens.size(), std::vector<Vertex>(out.labels.size()));
  out.left_inverse_action = out.left_action;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Vertex v = 0; v < out.labels.size(); ++v) {
      out.left_action[i][v] = id.at(q.multiply(gens[i], out.labels[v]));
      out.left_inverse_action[i][v] = id.at(q.multiply(inverses[i], out.labels[v]));
    }

  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::map<std::pair<Vertex, Vertex>, bool> present;
  for (Vertex v = 0; v < out.labels.size(); ++v)
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Vertex w = out.left_action[i][v];
      if (w == v) {
        out.collapsed = true;
        continue;
      }
      if (present.emplace(std::minmax(v, w), true).second) pairs.emplace_back(v, w);
    }
  out.graph = Graph::build(out.labels.size(), pairs);
  if (out.graph.max_degree() < 2 * gens.size()) out.collapsed = true;

  if (tower.relators)
    for (const auto& r : *tower.relators)
      if (detail::evaluate_word(q, gens, inverses, r) != q.identity())
        throw GroupError("relator '" + format_word(r, tower.labels()) +
                         "' is not trivial in quotient " + std::to_string(n));
  return out;
}

/// Signed edge chain traced by a word read right to left from vertex v.
inline std::vector<std::pair<EdgeId, int>> word_lift(const CayleyGraph& cg, const Word& w, Vertex v) {
  std::map<EdgeId, int> acc;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const Vertex next = cg.apply(*it, v);
    if (next != v) {
      const auto e = cg.graph.find_edge(v, next);
      acc[*e] += v < next ? 1 : -1;
    }
    v = next;
  }
  std::vector<std::pair<EdgeId, int>> chain;
  for (auto [e, c] : acc)
    if (c != 0) chain.emplace_back(e, c);
  return chain;
}

struct HomologyReport {
  std::int64_t n = 0;
  std::size_t index = 0;
  std::size_t dim_p = 0;
  Rational gradient_term;
  std::size_t relator_rank = 0;
  std::size_t cyclomatic = 0;
  /// Loops or merged edges were dropped; the value is a convention, not H_1.
  bool degenerate = false;
};

/// dim H_1(Gamma_n; F_p) as cyclomatic number minus the rank of the
/// relator lifts at every vertex.
inline HomologyReport schreier_homology_dim(const TowerSpec& tower, std::int64_t n, std::uint32_t p) {
  if (!tower.relators) throw GroupError("schreier_homology_dim: tower has no relators");
  const auto field = FieldSpec::prime(p);
  const auto cg = cayley_graph(tower, n);
  std::vector<std::vector<std::pair<EdgeId, int>>> chains;
  for (Vertex v = 0; v < cg.order(); ++v)
    for (const auto& r : *tower.relators) {
      auto chain = word_lift(cg, r, v);
      if (!chain.empty()) chains.push_back(std::move(chain));
    }
  HomologyReport rep;
  rep.n = n;
  rep.index = cg.order();
  rep.cyclomatic = cyclomatic_number(cg.graph);
  rep.relator_rank = chain_rank(cg.graph, chains, field);
  rep.dim_p = rep.cyclomatic - rep.relator_rank;
  rep.gradient_term = Rational(BigInt(rep.dim_p), BigInt(rep.index));
  rep.degenerate = cg.collapsed || cg.order() == 1;
  return rep;
}

/// d(Gamma_n) / |Gamma : Gamma_n| for families with a closed form.
inline std::optional<Rational> known_rank_gradient_term(const TowerSpec& tower, std::int64_t n) {
  if (tower.known_rank.kind == KnownRank::Kind::None) return std::nullopt;
  const auto index = cayley_graph(tower, n).order();
  BigInt d;
  if (tower.known_rank.kind == KnownRank::Kind::Free)
    d = BigInt(1) + BigInt(index) * (BigInt(tower.known_rank.rank) - 1);
  else
    d = tower.known_rank.rank;
  return Rational(d, BigInt(index));
}

struct CompressionResult {
  Graph g;
  Graph h;
  std::vector<Vertex> subgroup;
  std::vector<EdgeId> forest_edges;  // ids in h
  std::size_t subgroup_edge_count = 0;
  EquivalenceWitness witness;        // h against g
  std::uint32_t t = 0;               // max_v d_G(v, S_n)
  std::uint32_t lipschitz = 1;       // least L with d_{H'} <= L d_G on S_n
  std::size_t coarse_index = 0;      // |Gamma : Gamma_k|
  Rational edge_ratio;               // |E(H)| / |V|
  Rational edge_bound;              // 1 + |T| / |Gamma : Gamma_k|
};

/// Keeps the Cayley graph of Gamma_k/Gamma_n on T and joins every other
/// vertex to it along its lexicographically least shortest G-path.
inline CompressionResult coset_compression(const TowerSpec& tower, std::int64_t k, std::int64_t n,
                                           const std::vector<Word>& subgroup_generators) {
  if (n <= k) throw GroupError("coset_compression: need n > k");
  if (subgroup_generators.empty()) throw GroupError("coset_compression: T is empty");
  const auto cg = cayley_graph(tower, n);
  const auto coarse = cayley_graph(tower, k);

  const auto qk = tower.quotient(k);
  const auto qn = tower.quotient(n);
  std::vector<Element> gk, gk_inv, gn, gn_inv;
  for (const auto& g : tower.generators) {
    gk.push_back(qk.reduce(g.value));
    gk_inv.push_back(qk.inverse(gk.back(), tower.element_cap));
    gn.push_back(qn.reduce(g.value));
    gn_inv.push_back(qn.inverse(gn.back(), tower.element_cap));
  }
  for (const auto& w : subgroup_generators)
    if (detail::evaluate_word(qk, gk, gk_inv, w) != qk.identity())
      throw GroupError("coset_compression: word '" + format_word(w, tower.labels()) +
                       "' is not in Gamma_k");
  if (cg.order() % coarse.order() != 0)
    throw GroupError("coset_compression: Gamma_n is not contained in Gamma_k");

  std::vector<Element> t_elems, t_inv;
  for (const auto& w : subgroup_generators) {
    t_elems.push_back(detail::evaluate_word(qn, gn, gn_inv, w));
    t_inv.push_back(qn.inverse(t_elems.back(), tower.element_cap));
  }
  const auto sub_elems = detail::enumerate_subgroup(qn, t_elems, t_inv, tower.element_cap);
  if (sub_elems.size() != cg.order() / coarse.order())
    throw GroupError("coset_compression: T generates " + std::to_string(sub_elems.size()) +
                     " elements of Gamma_k/Gamma_n, expected " +
                     std::to_string(cg.order() / coarse.order()));

  std::map<Element, Vertex> id;
  for (Vertex v = 0; v < cg.order(); ++v) id.emplace(cg.labels[v], v);

  CompressionResult out;
  out.g = cg.graph;
  out.coarse_index = coarse.order();
  for (const auto& e : sub_elems) out.subgroup.push_back(id.at(e));
  std::sort(out.subgroup.begin(), out.subgroup.end());

  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::map<std::pair<Vertex, Vertex>, bool> present;
  for (Vertex v : out.subgroup)
    for (const auto& t : t_elems) {
      const Vertex w = id.at(qn.multiply(t, cg.labels[v]));
      if (w != v && present.emplace(std::minmax(v, w), true).second) pairs.emplace_back(v, w);
    }
  out.subgroup_edge_count = pairs.size();
  const Graph h_sub = Graph::build(cg.order(), pairs);

  const auto dist = bfs_distance(cg.graph, std::span<const Vertex>(out.subgroup));
  for (Vertex v = 0; v < cg.order(); ++v) {
    if (dist[v] == 0) continue;
    Vertex next = kUnreached;
    for (const auto& inc : cg.graph.neighbors(v))
      if (dist[inc.neighbor] + 1 == dist[v]) next = std::min(next, inc.neighbor);
    pairs.emplace_back(v, next);
    out.t = std::max(out.t, dist[v]);
  }
  out.h = Graph::build(cg.order(), pairs);
  for (EdgeId e = static_cast<EdgeId>(out.subgroup_edge_count); e < out.h.edge_count(); ++e)
    out.forest_edges.push_back(e);

  for (Vertex x : out.subgroup) {
    const auto dh = bfs_distance(h_sub, x);
    const auto dg = bfs_distance(cg.graph, x);
    for (Vertex y : out.subgroup) {
      if (y == x) continue;
      const auto ratio = (dh[y] + dg[y] - 1) / dg[y];
      out.lipschitz = std::max(out.lipschitz, ratio);
    }
  }
  out.witness = certify_pair(out.h, out.g, n);
  out.edge_ratio = Rational(BigInt(out.h.edge_count()), BigInt(cg.order()));
  out.edge_bound = 1 + Rational(BigInt(subgroup_generators.size()), BigInt(out.coarse_index));
  return out;
}

// ---- presets and descriptor files ----

inline TowerSpec preset_tower(const std::string& name) {
  TowerSpec t;
  t.family_name = name;
  auto relators = [&t](std::initializer_list<const char*> words) {
    std::vector<Word> out;
    for (const char* w : words) out.push_back(parse_word(w, t.labels()));
    t.relators = out;
  };
  if (name == "cycle") {
    t.kind = QuotientKind::Abelian;
    t.dim = 1;
    t.generators = {{"a", {1}}};
    relators({});
    t.known_rank = {KnownRank::Kind::Free, 1};
  } else if (name == "torus2") {
    t.kind = QuotientKind::Abelian;
    t.dim = 2;
    t.generators = {{"a", {1, 0}}, {"b", {0, 1}}};
    relators({"a b a^-1 b^-1"});
    t.known_rank = {KnownRank::Kind::Abelian, 2};
  } else if (name == "torus2-diag") {
    t.kind = QuotientKind::Abelian;
    t.dim = 2;
    t.generators = {{"a", {1, 0}}, {"b", {0, 1}}, {"c", {1, 1}}};
    relators({"a b a^-1 b^-1", "c b^-1 a^-1"});
    t.known_rank = {KnownRank::Kind::Abelian, 2};
  } else if (name == "heisenberg") {
    t.kind = QuotientKind::Matrix;
    t.dim = 3;
    t.generators = {{"x", {1, 1, 0, 0, 1, 0, 0, 0, 1}}, {"y", {1, 0, 0, 0, 1, 1, 0, 0, 1}}};
    relators({"x x y x^-1 y^-1 x^-1 y x y^-1 x^-1", "y x y x^-1 y^-1 x y^-1 x^-1"});
  } else if (name == "freeF2-sl2") {
    t.kind = QuotientKind::Matrix;
    t.dim = 2;
    t.generators = {{"a", {1, 1, 0, 1}}, {"b", {1, 0, 1, 1}}};
    relators({});
    t.known_rank = {KnownRank::Kind::Free, 2};
  } else {
    throw GroupError("unknown tower family '" + name + "'");
  }
  return t;
}

inline std::vector<std::string> preset_tower_names() {
  return {"cycle", "torus2", "torus2-diag", "heisenberg", "freeF2-sl2"};
}

/// Tower descriptor JSON (schema "graphseq.tower/v1"):
///   {"family": name, "quotient": "abelian"|"matrix", "dim": int,
///    "generators": [{"label": "a", "value": [..]}],
///    "relators": ["a b a^-1 b^-1", ...] or null,
///    "known_rank": {"kind": "free"|"abelian"|"none", "rank": int},
///    "indices": [..], "params": {...}, "element_cap": int}
/// A descriptor holding only "family" (and optionally "indices") names a preset.
inline TowerSpec tower_from_json(const nlohmann::json& j) {
  if (!j.contains("family")) throw GroupError("tower descriptor: missing 'family'");
  TowerSpec t;
  if (!j.contains("generators")) {
    t = preset_tower(j.at("family").get<std::string>());
  } else {
    t.family_name = j.at("family").get<std::string>();
    const auto quotient = j.value("quotient", std::string("abelian"));
    if (quotient == "abelian")
      t.kind = QuotientKind::Abelian;
    else if (quotient == "matrix")
      t.kind = QuotientKind::Matrix;
    else
      throw GroupError("tower descriptor: unknown quotient kind '" + quotient + "'");
    t.dim = j.at("dim").get<std::size_t>();
    for (const auto& g : j.at("generators"))
      t.generators.push_back({g.at("label").get<std::string>(), g.at("value").get<Element>()});
    if (j.contains("relators") && !j.at("relators").is_null()) {
      std::vector<Word> rels;
      for (const auto& w : j.at("relators")) rels.push_back(parse_word(w.get<std::string>(), t.labels()));
      t.relators = rels;
    }
    if (j.contains("known_rank")) {
      const auto kind = j.at("known_rank").value("kind", std::string("none"));
      const auto rank = j.at("known_rank").value("rank", std::size_t{0});
      if (kind == "free")
        t.known_rank = {KnownRank::Kind::Free, rank};
      else if (kind == "abelian")
        t.known_rank = {KnownRank::Kind::Abelian, rank};
      else if (kind != "none")
        throw GroupError("tower descriptor: unknown known_rank kind '" + kind + "'");
    }
  }
  if (j.contains("indices")) t.indices = j.at("indices").get<std::vector<std::int64_t>>();
  if (j.contains("params")) t.params = j.at("params");
  if (j.contains("element_cap")) t.element_cap = j.at("element_cap").get<std::size_t>();
  return t;
}

inline nlohmann::json tower_to_json(const TowerSpec& t) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : t.generators) gens.push_back({{"label", g.label}, {"value", g.value}});
  nlohmann::json rels = nullptr;
  if (t.relators) {
    rels = nlohmann::json::array();
    for (const auto& w : *t.relators) rels.push_back(format_word(w, t.labels()));
  }
  const char* kind = t.known_rank.kind == KnownRank::Kind::Free      ? "free"
                     : t.known_rank.kind == KnownRank::Kind::Abelian ? "abelian"
                                                                     : "none";
  return {{"schema", "graphseq.tower/v1"},
          {"family", t.family_name},
          {"quotient", t.kind == QuotientKind::Abelian ? "abelian" : "matrix"},
          {"dim", t.dim},
          {"generators", gens},
          {"relators", rels},
          {"known_rank", {{"kind", kind}, {"rank", t.known_rank.rank}}},
          {"indices", t.indices},
          {"params", t.params},
          {"element_cap", t.element_cap}};
}

inline TowerSpec read_tower_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return tower_from_json(nlohmann::json::parse(in));
}

}  // namespace graphseq
