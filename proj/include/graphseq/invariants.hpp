#pragma once

// Sequence-level invariants over an index window: edge numbers, s_q tables
// and beta proxies, equivalence certificates, cost upper bounds and the
// rank sandwich.

#include <graphseq/cycle_space.hpp>
#include <graphseq/equivalence.hpp>
#include <graphseq/hyperfinite.hpp>
#include <graphseq/parallel.hpp>
#include <graphseq/rational.hpp>
#include <graphseq/sequence.hpp>
#include <graphseq/towers.hpp>

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace graphseq {

inline nlohmann::json optional_rational_json(const std::optional<Rational>& r) {
  if (!r) return nullptr;
  return rational_json(*r);
}

/// Finite-window stand-ins for liminf: minimum over the window, minimum over
/// the last ceil(len/2) entries, and the direction of change.
struct WindowStats {
  std::optional<Rational> window_min;
  std::optional<Rational> tail_min;
  std::string trend = "empty";  // constant, decreasing, nonincreasing, increasing, nondecreasing, mixed
  std::size_t completed = 0;
  std::size_t total = 0;
};

inline WindowStats window_stats(const std::vector<std::optional<Rational>>& values) {
  WindowStats s;
  s.total = values.size();
  std::vector<Rational> seen;
  const std::size_t tail_from = values.size() / 2;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) continue;
    ++s.completed;
    seen.push_back(*values[i]);
    if (!s.window_min || *values[i] < *s.window_min) s.window_min = *values[i];
    if (i >= tail_from && (!s.tail_min || *values[i] < *s.tail_min)) s.tail_min = *values[i];
  }
  if (seen.empty()) return s;
  bool up = false, down = false, flat = false;
  for (std::size_t i = 1; i < seen.size(); ++i) {
    if (seen[i] < seen[i - 1])
      down = true;
    else if (seen[i] > seen[i - 1])
      up = true;
    else
      flat = true;
  }
  if (up && down)
    s.trend = "mixed";
  else if (down)
    s.trend = flat ? "nonincreasing" : "decreasing";
  else if (up)
    s.trend = flat ? "nondecreasing" : "increasing";
  else
    s.trend = "constant";
  return s;
}

inline nlohmann::json window_stats_json(const WindowStats& s) {
  return {{"window_min", optional_rational_json(s.window_min)},
          {"tail_min", optional_rational_json(s.tail_min)},
          {"trend", s.trend},
          {"completed", s.completed},
          {"total", s.total},
          {"label", "finite-window statistic, not a limit"}};
}

// ---- edge numbers ----

struct EdgeNumberRow {
  std::int64_t n = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  Rational ratio;
};

struct EdgeNumberReport {
  std::vector<EdgeNumberRow> rows;
  WindowStats stats;
};

inline EdgeNumberReport edge_number_estimate(const GraphSequence& seq) {
  if (seq.size() == 0) throw SequenceError("edge_number_estimate: empty window");
  EdgeNumberReport rep;
  std::vector<std::optional<Rational>> values;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& g = seq.graph(i);
    if (g.vertex_count() == 0) throw SequenceError("graph with no vertices at n=" + std::to_string(seq.window()[i]));
    EdgeNumberRow row{seq.window()[i], g.vertex_count(), g.edge_count(),
                      Rational(BigInt(g.edge_count()), BigInt(g.vertex_count()))};
    values.push_back(row.ratio);
    rep.rows.push_back(std::move(row));
  }
  rep.stats = window_stats(values);
  return rep;
}

inline nlohmann::json edge_number_json(const EdgeNumberReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n}, {"vertices", row.vertices}, {"edges", row.edges}, {"ratio", rational_json(row.ratio)}});
  return {{"rows", rows}, {"summary", window_stats_json(r.stats)}};
}

// ---- s_q tables ----

struct BetaOptions {
  std::size_t jobs = 1;
  /// Per-cell budget in seconds; nullopt = unlimited.
  std::optional<double> cell_timeout;
};

struct BetaCell {
  std::int64_t n = 0;
  std::uint32_t q = 0;
  FieldSpec field;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  bool complete = false;
  std::size_t rank = 0;
  std::optional<Rational> s;  // absent when the cell timed out
  std::size_t cycles_seen = 0;
  bool saturated = false;
  double seconds = 0;
};

struct BetaSeries {
  std::uint32_t q = 0;
  FieldSpec field;
  WindowStats stats;
};

struct BetaReport {
  std::uint32_t q_max = 0;
  std::vector<FieldSpec> fields;
  std::vector<BetaCell> cells;  // (n, q, field) order
  std::vector<BetaSeries> series;
  std::vector<std::optional<Rational>> beta_proxy;  // per field: min over q of tail_min
  bool partial = false;

  const BetaCell* cell(std::int64_t n, std::uint32_t q, const FieldSpec& f) const {
    for (const auto& c : cells)
      if (c.n == n && c.q == q && c.field == f) return &c;
    return nullptr;
  }
};

inline BetaReport beta_estimate(const GraphSequence& seq, const std::vector<FieldSpec>& fields,
                                std::uint32_t q_max, const BetaOptions& opt = {}) {
  if (q_max < 3) throw SequenceError("beta_estimate: q_max must be >= 3");
  if (fields.empty()) throw SequenceError("beta_estimate: no fields");
  BetaReport rep;
  rep.q_max = q_max;
  rep.fields = fields;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::uint32_t q = 3; q <= q_max; ++q)
      for (const auto& f : fields) {
        BetaCell c;
        c.n = seq.window()[i];
        c.q = q;
        c.field = f;
        c.vertices = seq.graph(i).vertex_count();
        c.edges = seq.graph(i).edge_count();
        rep.cells.push_back(c);
      }
  const std::size_t per_graph = (q_max - 2) * fields.size();
  parallel_for(opt.jobs, rep.cells.size(), [&](std::size_t k) {
    auto& c = rep.cells[k];
    const auto& g = seq.graph(k / per_graph);
    const auto start = std::chrono::steady_clock::now();
    Deadline deadline;
    if (opt.cell_timeout) deadline = Deadline::after(std::chrono::duration<double>(*opt.cell_timeout));
    const auto r = cycle_rank_detail(g, c.q, c.field, deadline);
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.complete = r.complete();
    c.cycles_seen = r.cycles_seen;
    c.saturated = r.saturated;
    if (c.complete) {
      c.rank = r.rank;
      c.s = s_q_from_rank(g, r.rank);
    }
  });
  for (const auto& c : rep.cells) rep.partial = rep.partial || !c.complete;
  for (const auto& f : fields) {
    std::optional<Rational> beta;
    for (std::uint32_t q = 3; q <= q_max; ++q) {
      std::vector<std::optional<Rational>> values;
      for (const auto& c : rep.cells)
        if (c.q == q && c.field == f) values.push_back(c.s);
      BetaSeries series{q, f, window_stats(values)};
      if (series.stats.tail_min && (!beta || *series.stats.tail_min < *beta)) beta = series.stats.tail_min;
      rep.series.push_back(std::move(series));
    }
    rep.beta_proxy.push_back(beta);
  }
  return rep;
}

/// Per-index minimum over q of s_q for one field.
inline std::optional<Rational> beta_at(const BetaReport& r, std::int64_t n, const FieldSpec& f) {
  std::optional<Rational> out;
  for (const auto& c : r.cells)
    if (c.n == n && c.field == f && c.s && (!out || *c.s < *out)) out = c.s;
  return out;
}

inline nlohmann::json beta_cell_json(const BetaCell& c) {
  return {{"n", c.n},
          {"q", c.q},
          {"field", c.field.name()},
          {"vertices", c.vertices},
          {"edges", c.edges},
          {"status", c.complete ? "ok" : "timeout"},
          {"rank", c.complete ? nlohmann::json(c.rank) : nlohmann::json(nullptr)},
          {"s_q", optional_rational_json(c.s)},
          {"cycles_seen", c.cycles_seen},
          {"saturated", c.saturated}};
}

inline nlohmann::json beta_json(const BetaReport& r) {
  nlohmann::json cells = nlohmann::json::array(), series = nlohmann::json::array(),
                 proxy = nlohmann::json::object(), fields = nlohmann::json::array();
  for (const auto& c : r.cells) cells.push_back(beta_cell_json(c));
  for (const auto& s : r.series)
    series.push_back({{"q", s.q}, {"field", s.field.name()}, {"summary", window_stats_json(s.stats)}});
  for (std::size_t i = 0; i < r.fields.size(); ++i) {
    fields.push_back(r.fields[i].name());
    proxy[r.fields[i].name()] = optional_rational_json(r.beta_proxy[i]);
  }
  return {{"q_range", {3, r.q_max}},
          {"fields", fields},
          {"cells", cells},
          {"series", series},
          {"beta_proxy", proxy},
          {"beta_proxy_definition", "min over q of the tail-window minimum of s_q"},
          {"partial", r.partial}};
}

// ---- equivalence ----

struct CounterExample {
  std::int64_t index = 0;
  Edge edge;
  /// "forward": an A-edge whose ends B cannot connect; "backward" the reverse.
  std::string direction;
};

struct EquivalenceResult {
  std::vector<EquivalenceWitness> per_index;
  EquivalenceWitness uniform;
  std::optional<CounterExample> counterexample;
  bool equivalent() const { return !counterexample && uniform.finite(); }
};

inline void require_same_vertices(const GraphSequence& a, const GraphSequence& b) {
  if (a.window() != b.window()) throw SequenceError("sequences have different index windows");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.graph(i).vertex_count() != b.graph(i).vertex_count())
      throw SequenceError("vertex mismatch at n=" + std::to_string(a.window()[i]) + ": " +
                          std::to_string(a.graph(i).vertex_count()) + " vs " +
                          std::to_string(b.graph(i).vertex_count()));
    if (a.kind() == GraphSequence::Kind::Tower && b.kind() == GraphSequence::Kind::Tower &&
        a.cayley(i).labels != b.cayley(i).labels)
      throw SequenceError("tower quotients at n=" + std::to_string(a.window()[i]) +
                          " have different element sets; no vertex identification");
  }
}

/// Vertices are identified by id (tower quotients: by group element).
inline EquivalenceResult certify_equivalence(const GraphSequence& a, const GraphSequence& b) {
  require_same_vertices(a, b);
  EquivalenceResult out;
  out.uniform.verified_indices.clear();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto n = a.window()[i];
    const auto fwd = domination_detail(b.graph(i), a.graph(i));
    const auto bwd = domination_detail(a.graph(i), b.graph(i));
    EquivalenceWitness w{fwd.constant, bwd.constant, {n}};
    if (!out.counterexample) {
      if (!fwd.constant)
        out.counterexample = CounterExample{n, a.graph(i).edge(*fwd.witness_edge), "forward"};
      else if (!bwd.constant)
        out.counterexample = CounterExample{n, b.graph(i).edge(*bwd.witness_edge), "backward"};
    }
    out.uniform.absorb(w);
    out.per_index.push_back(std::move(w));
  }
  return out;
}

inline nlohmann::json equivalence_json(const EquivalenceResult& r) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& w : r.per_index) per.push_back(witness_json(w));
  nlohmann::json j{{"per_index", per}, {"uniform", witness_json(r.uniform)}, {"equivalent", r.equivalent()}};
  if (r.counterexample)
    j["counterexample"] = {{"index", r.counterexample->index},
                           {"edge", {r.counterexample->edge.tail, r.counterexample->edge.head}},
                           {"direction", r.counterexample->direction}};
  else
    j["counterexample"] = nullptr;
  return j;
}

// ---- cost upper bounds ----

struct CostStrategy {
  enum class Kind { Identity, BoxPartition, TreePartition, CosetCompression };
  Kind kind = Kind::Identity;
  std::int64_t parameter = 0;       // s, q or k
  std::vector<std::string> words;   // T for coset compression
  std::optional<std::size_t> block_cap;

  /// identity | box:<s> | tree:<q> | coset:<k>:<word>,<word>,...
  static CostStrategy parse(const std::string& text) {
    CostStrategy s;
    auto fields = [&] {
      std::vector<std::string> out;
      std::size_t start = 0;
      for (int i = 0; i < 2; ++i) {
        auto colon = text.find(':', start);
        if (colon == std::string::npos) break;
        out.push_back(text.substr(start, colon - start));
        start = colon + 1;
      }
      out.push_back(text.substr(start));
      return out;
    }();
    auto number = [&](const std::string& v) {
      std::size_t used = 0;
      std::int64_t x = 0;
      try {
        x = std::stoll(v, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != v.size() || x < 1)
        throw SequenceError("strategy '" + text + "': bad parameter '" + v + "'");
      return x;
    };
    const auto& name = fields[0];
    if (name == "identity" && fields.size() == 1) return s;
    if (name == "box" && fields.size() == 2) {
      s.kind = Kind::BoxPartition;
      s.parameter = number(fields[1]);
    } else if (name == "tree" && fields.size() == 2) {
      s.kind = Kind::TreePartition;
      s.parameter = number(fields[1]);
    } else if (name == "coset" && fields.size() == 3) {
      s.kind = Kind::CosetCompression;
      s.parameter = number(fields[1]);
      std::stringstream in(fields[2]);
      std::string w;
      while (std::getline(in, w, ',')) s.words.push_back(w);
      if (s.words.empty()) throw SequenceError("strategy '" + text + "': no subgroup generators");
    } else {
      throw SequenceError("unknown strategy '" + text + "' (identity, box:s, tree:q, coset:k:words)");
    }
    return s;
  }

  std::string name() const {
    switch (kind) {
      case Kind::Identity:
        return "identity";
      case Kind::BoxPartition:
        return "box:" + std::to_string(parameter);
      case Kind::TreePartition:
        return "tree:" + std::to_string(parameter);
      case Kind::CosetCompression: {
        std::string out = "coset:" + std::to_string(parameter) + ":";
        for (std::size_t i = 0; i < words.size(); ++i) out += (i ? "," : "") + words[i];
        return out;
      }
    }
    return "?";
  }
};

struct CostRow {
  std::int64_t n = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;  // of the compressed graph H_n
  Rational ratio;
  EquivalenceWitness witness;  // H_n against G_n
  nlohmann::json detail = nlohmann::json::object();
};

struct CostReport {
  CostStrategy strategy;
  std::vector<CostRow> rows;
  std::vector<Graph> compressed;
  EquivalenceWitness uniform;
  /// Window minimum of e(H_n); emitted only for a uniform finite witness.
  std::optional<Rational> bound;
  WindowStats stats;
};

/// Spanning forest inside every block plus all cut edges.
inline Graph partition_compression(const Graph& g, const Partition& p) {
  std::vector<EdgeId> inner;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (p.block[g.edge(e).tail] == p.block[g.edge(e).head]) inner.push_back(e);
  const Graph inside = edge_subgraph(g, inner);
  auto pairs = edge_subgraph(inside, spanning_forest(inside)).edge_pairs();
  for (EdgeId e : p.cut_edges) pairs.emplace_back(g.edge(e).tail, g.edge(e).head);
  std::sort(pairs.begin(), pairs.end());
  return Graph::build(g.vertex_count(), pairs);
}

inline CostReport cost_upper_bound(const GraphSequence& seq, const CostStrategy& strategy, std::size_t jobs = 1) {
  using K = CostStrategy::Kind;
  const bool tower = seq.kind() == GraphSequence::Kind::Tower;
  if (strategy.kind == K::BoxPartition && (!tower || seq.tower()->kind != QuotientKind::Abelian))
    throw SequenceError("box partition needs a tower of integer vectors (torus coordinates)");
  if (strategy.kind == K::CosetCompression && !tower)
    throw SequenceError("coset compression needs a tower-backed sequence");
  std::vector<Word> words;
  if (strategy.kind == K::CosetCompression)
    for (const auto& w : strategy.words) words.push_back(parse_word(w, seq.tower()->labels()));

  CostReport rep;
  rep.strategy = strategy;
  rep.rows.resize(seq.size());
  rep.compressed.resize(seq.size());
  parallel_for(jobs, seq.size(), [&](std::size_t i) {
    const auto& g = seq.graph(i);
    const auto n = seq.window()[i];
    auto& row = rep.rows[i];
    row.n = n;
    row.vertices = g.vertex_count();
    Graph h;
    switch (strategy.kind) {
      case K::Identity:
        h = g;
        break;
      case K::BoxPartition: {
        const auto p = box_partition(g, seq.cayley(i).labels, strategy.parameter);
        h = partition_compression(g, p);
        row.detail = {{"blocks", p.block_count}, {"max_block_size", p.max_block_size},
                      {"cut_edges", p.cut_edges.size()}, {"cut_ratio", rational_json(p.cut_ratio)}};
        if (strategy.block_cap && p.max_block_size > *strategy.block_cap)
          throw SequenceError("partition block of size " + std::to_string(p.max_block_size) +
                              " exceeds K=" + std::to_string(*strategy.block_cap));
        break;
      }
      case K::TreePartition: {
        if (!is_tree(g)) throw SequenceError("tree partition at n=" + std::to_string(n) + ": graph is not a tree");
        const auto tp = tree_partition(g, static_cast<std::uint32_t>(strategy.parameter));
        h = partition_compression(g, tp.partition);
        row.detail = {{"blocks", tp.partition.block_count}, {"max_block_size", tp.partition.max_block_size},
                      {"cut_edges", tp.partition.cut_edges.size()},
                      {"cut_ratio", rational_json(tp.partition.cut_ratio)}};
        if (strategy.block_cap && tp.partition.max_block_size > *strategy.block_cap)
          throw SequenceError("partition block exceeds K");
        break;
      }
      case K::CosetCompression: {
        const auto c = coset_compression(*seq.tower(), strategy.parameter, n, words);
        h = c.h;
        const auto backward_bound = static_cast<std::uint64_t>(c.lipschitz) * (2 * c.t + 1);
        row.detail = {{"subgroup_size", c.subgroup.size()},
                      {"subgroup_edges", c.subgroup_edge_count},
                      {"forest_edges", c.forest_edges.size()},
                      {"forest_identity", c.forest_edges.size() == g.vertex_count() - c.subgroup.size()},
                      {"t", c.t},
                      {"L", c.lipschitz},
                      {"backward_bound", backward_bound},
                      {"coarse_index", c.coarse_index},
                      {"edge_bound", rational_json(c.edge_bound)}};
        break;
      }
    }
    row.edges = h.edge_count();
    row.ratio = Rational(BigInt(h.edge_count()), BigInt(g.vertex_count()));
    row.witness = certify_pair(h, g, n);
    rep.compressed[i] = std::move(h);
  });
  rep.uniform.verified_indices.clear();
  std::vector<std::optional<Rational>> values;
  for (const auto& row : rep.rows) {
    rep.uniform.absorb(row.witness);
    values.push_back(row.ratio);
  }
  rep.stats = window_stats(values);
  if (rep.uniform.finite()) rep.bound = rep.stats.window_min;
  return rep;
}

inline nlohmann::json cost_json(const CostReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n},
                    {"vertices", row.vertices},
                    {"edges", row.edges},
                    {"ratio", rational_json(row.ratio)},
                    {"witness", witness_json(row.witness)},
                    {"detail", row.detail}});
  return {{"strategy", r.strategy.name()},
          {"rows", rows},
          {"uniform_witness", witness_json(r.uniform)},
          {"bound", optional_rational_json(r.bound)},
          {"summary", window_stats_json(r.stats)}};
}

// ---- sandwich ----

struct SandwichViolation {
  std::int64_t n;
  std::uint32_t q;
  FieldSpec field;
};

struct SandwichRow {
  std::int64_t n = 0;
  std::vector<std::optional<Rational>> beta;  // per field, min over q at this n
  std::optional<Rational> cost_minus_one;     // best finite-witness strategy
  std::string best_strategy;
  std::vector<std::optional<Rational>> gap;   // cost - 1 - beta
};

struct SandwichReport {
  BetaReport beta;
  std::vector<CostReport> costs;
  std::vector<SandwichViolation> violations;  // s_q(Q) > s_q(F_p)
  std::vector<SandwichRow> rows;
  std::optional<Rational> cost_bound;         // best window bound over strategies
  std::vector<std::optional<Rational>> window_gap;
  bool shadow_holds = true;                   // beta proxy + 1 <= cost bound for every field
};

inline SandwichReport sandwich_report(const GraphSequence& seq, const std::vector<std::uint32_t>& primes,
                                      std::uint32_t q_max, std::vector<CostStrategy> strategies = {},
                                      const BetaOptions& opt = {}) {
  std::vector<FieldSpec> fields{FieldSpec::rationals()};
  for (auto p : primes) fields.push_back(FieldSpec::prime(p));
  if (std::none_of(strategies.begin(), strategies.end(),
                   [](const CostStrategy& s) { return s.kind == CostStrategy::Kind::Identity; }))
    strategies.insert(strategies.begin(), CostStrategy{});

  SandwichReport rep;
  rep.beta = beta_estimate(seq, fields, q_max, opt);
  for (const auto& c : rep.beta.cells) {
    if (c.field.kind == FieldSpec::Kind::Rationals || !c.s) continue;
    const auto* rq = rep.beta.cell(c.n, c.q, FieldSpec::rationals());
    if (rq && rq->s && *rq->s > *c.s) rep.violations.push_back({c.n, c.q, c.field});
  }
  for (const auto& s : strategies) {
    rep.costs.push_back(cost_upper_bound(seq, s, opt.jobs));
    const auto& b = rep.costs.back().bound;
    if (b && (!rep.cost_bound || *b < *rep.cost_bound)) rep.cost_bound = b;
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    SandwichRow row;
    row.n = seq.window()[i];
    for (const auto& cost : rep.costs) {
      if (!cost.rows[i].witness.finite()) continue;
      const auto value = cost.rows[i].ratio - 1;
      if (!row.cost_minus_one || value < *row.cost_minus_one) {
        row.cost_minus_one = value;
        row.best_strategy = cost.strategy.name();
      }
    }
    for (const auto& f : fields) {
      row.beta.push_back(beta_at(rep.beta, row.n, f));
      row.gap.push_back(row.beta.back() && row.cost_minus_one
                            ? std::optional<Rational>(*row.cost_minus_one - *row.beta.back())
                            : std::nullopt);
    }
    rep.rows.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < fields.size(); ++k) {
    const auto& beta = rep.beta.beta_proxy[k];
    if (beta && rep.cost_bound) {
      rep.window_gap.push_back(*rep.cost_bound - 1 - *beta);
      if (*beta + 1 > *rep.cost_bound) rep.shadow_holds = false;
    } else {
      rep.window_gap.push_back(std::nullopt);
    }
  }
  return rep;
}

inline nlohmann::json sandwich_json(const SandwichReport& r) {
  nlohmann::json costs = nlohmann::json::array(), violations = nlohmann::json::array(),
                 rows = nlohmann::json::array(), window = nlohmann::json::object();
  for (const auto& c : r.costs) costs.push_back(cost_json(c));
  for (const auto& v : r.violations) violations.push_back({{"n", v.n}, {"q", v.q}, {"field", v.field.name()}});
  for (const auto& row : r.rows) {
    nlohmann::json beta = nlohmann::json::object(), gap = nlohmann::json::object();
    for (std::size_t k = 0; k < r.beta.fields.size(); ++k) {
      beta[r.beta.fields[k].name()] = optional_rational_json(row.beta[k]);
      gap[r.beta.fields[k].name()] = optional_rational_json(row.gap[k]);
    }
    rows.push_back({{"n", row.n},
                    {"beta", beta},
                    {"cost_minus_one", optional_rational_json(row.cost_minus_one)},
                    {"best_strategy", row.best_strategy},
                    {"gap", gap}});
  }
  for (std::size_t k = 0; k < r.beta.fields.size(); ++k)
    window[r.beta.fields[k].name()] = {{"beta_proxy", optional_rational_json(r.beta.beta_proxy[k])},
                                       {"gap", optional_rational_json(r.window_gap[k])}};
  return {{"beta", beta_json(r.beta)},
          {"costs", costs},
          {"field_violations", violations},
          {"rows", rows},
          {"window", window},
          {"cost_bound", optional_rational_json(r.cost_bound)},
          {"beta_plus_one_le_cost", r.shadow_holds}};
}

// ---- rank inequalities for a dominated pair ----

struct RankInequalityRow {
  std::int64_t n = 0;
  std::uint32_t q = 0;
  FieldSpec field;
  Rational s_h;     // s^q(H_n)
  Rational s_g;     // s^q(G_n)
  Rational s_h_ql;  // s^{qL}(H_n)
  bool h_ge_g = false;
  bool g_ge_h_ql = false;
};

struct RankInequalityReport {
  std::uint32_t lipschitz = 1;  // L: G-edges measured in H
  std::vector<std::uint32_t> skipped_q;  // q <= L
  std::vector<RankInequalityRow> rows;
  bool pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.h_ge_g && r.g_ge_h_ql; });
  }
};

/// For H_n a spanning subgraph of G_n with d_H <= L d_G and q > L, checks
/// s^q(H_n) >= s^q(G_n) and s^q(G_n) >= s^{qL}(H_n).
inline RankInequalityReport equivalence_rank_inequalities(const GraphSequence& g_seq, const GraphSequence& h_seq,
                                                          const std::vector<std::uint32_t>& qs,
                                                          const std::vector<FieldSpec>& fields,
                                                          std::size_t jobs = 1) {
  require_same_vertices(g_seq, h_seq);
  RankInequalityReport rep;
  for (std::size_t i = 0; i < g_seq.size(); ++i) {
    const auto& g = g_seq.graph(i);
    const auto& h = h_seq.graph(i);
    for (const auto& e : h.edges())
      if (!g.find_edge(e.tail, e.head))
        throw SequenceError("H is not a subgraph of G at n=" + std::to_string(g_seq.window()[i]));
    const auto l = domination_constant(h, g);
    if (!l) throw SequenceError("H does not dominate G at n=" + std::to_string(g_seq.window()[i]));
    rep.lipschitz = std::max(rep.lipschitz, *l);
  }
  for (std::size_t i = 0; i < g_seq.size(); ++i)
    for (auto q : qs) {
      if (q <= rep.lipschitz) {
        if (i == 0) rep.skipped_q.push_back(q);
        continue;
      }
      for (const auto& f : fields) {
        RankInequalityRow row;
        row.n = g_seq.window()[i];
        row.q = q;
        row.field = f;
        rep.rows.push_back(row);
      }
    }
  std::vector<std::size_t> graph_of(rep.rows.size());
  for (std::size_t k = 0; k < rep.rows.size(); ++k)
    graph_of[k] = static_cast<std::size_t>(std::find(g_seq.window().begin(), g_seq.window().end(), rep.rows[k].n) -
                                           g_seq.window().begin());
  parallel_for(jobs, rep.rows.size(), [&](std::size_t k) {
    auto& row = rep.rows[k];
    const auto& g = g_seq.graph(graph_of[k]);
    const auto& h = h_seq.graph(graph_of[k]);
    row.s_h = s_q(h, row.q, row.field);
    row.s_g = s_q(g, row.q, row.field);
    row.s_h_ql = s_q(h, row.q * rep.lipschitz, row.field);
    row.h_ge_g = row.s_h >= row.s_g;
    row.g_ge_h_ql = row.s_g >= row.s_h_ql;
  });
  return rep;
}

inline nlohmann::json rank_inequality_json(const RankInequalityReport& r) {
  nlohmann::json rows = nlohmann::json::array(), failures = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json j{{"n", row.n},
                     {"q", row.q},
                     {"field", row.field.name()},
                     {"s_q_H", rational_json(row.s_h)},
                     {"s_q_G", rational_json(row.s_g)},
                     {"s_qL_H", rational_json(row.s_h_ql)},
                     {"H_ge_G", row.h_ge_g},
                     {"G_ge_H_qL", row.g_ge_h_ql}};
    if (!row.h_ge_g || !row.g_ge_h_ql) failures.push_back({{"n", row.n}, {"q", row.q}, {"field", row.field.name()}});
    rows.push_back(std::move(j));
  }
  return {{"L", r.lipschitz}, {"skipped_q", r.skipped_q}, {"rows", rows}, {"failures", failures}, {"pass", r.pass()}};
}

}  // namespace graphseq
