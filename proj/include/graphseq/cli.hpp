#pragma once

// Run configurations and the command implementations behind the graphseq
// tool. Every command builds a Report; writing it is left to execute().

#include <graphseq/edge_list.hpp>
#include <graphseq/hyperfinite.hpp>
#include <graphseq/invariants.hpp>
#include <graphseq/report.hpp>
#include <graphseq/sequence.hpp>
#include <graphseq/towers.hpp>

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace graphseq {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitComputation = 2, kExitIo = 3 };

struct RunConfig {
  std::string command;
  // sequence source
  std::string family;
  nlohmann::json params = nlohmann::json::object();
  std::string window;
  std::vector<std::string> graph_files;
  std::string tower_file;
  std::uint64_t seed = 1;
  // second sequence for equiv
  std::string family_b;
  std::vector<std::string> graph_files_b;
  // beta / sandwich
  std::uint32_t q_max = 4;
  std::vector<std::string> fields{"Q"};
  std::vector<std::uint32_t> primes{2};
  std::optional<double> cell_timeout;
  // cost
  std::vector<std::string> strategies;
  std::optional<std::size_t> block_cap;
  // hyperfinite
  std::string partitioner;
  std::string covering_file;
  std::optional<std::string> epsilon;
  // expansion
  std::uint32_t m = 3;
  std::uint32_t m_cap = 10;
  std::optional<bool> vertex_transitive;
  // tower
  std::optional<std::int64_t> compress_k;
  std::vector<std::string> compress_words;
  // report-merge
  std::vector<std::string> inputs;
  // outputs and execution
  std::string out;
  std::string csv;
  std::string out_dir;
  std::size_t jobs = 1;

  /// Everything that determines results; thread count and output paths
  /// are reported separately.
  nlohmann::json to_json() const {
    nlohmann::json j{{"command", command}};
    auto put = [&](const char* key, const auto& value, bool present) {
      if (present) j[key] = value;
    };
    put("family", family, !family.empty());
    put("params", params, !params.empty());
    put("window", window, !window.empty());
    put("graph_files", graph_files, !graph_files.empty());
    put("tower_file", tower_file, !tower_file.empty());
    j["seed"] = seed;
    put("family_b", family_b, !family_b.empty());
    put("graph_files_b", graph_files_b, !graph_files_b.empty());
    if (command == "beta" || command == "sandwich") {
      j["q_max"] = q_max;
      if (command == "beta") j["fields"] = fields;
      if (cell_timeout) j["cell_timeout_seconds"] = *cell_timeout;
    }
    if (command == "sandwich" || command == "tower") j["primes"] = primes;
    put("strategies", strategies, !strategies.empty());
    if (block_cap) j["block_cap"] = *block_cap;
    put("partitioner", partitioner, !partitioner.empty());
    put("covering_file", covering_file, !covering_file.empty());
    if (epsilon) j["epsilon"] = *epsilon;
    if (command == "expansion") {
      j["m"] = m;
      j["m_cap"] = m_cap;
      if (vertex_transitive) j["vertex_transitive"] = *vertex_transitive;
    }
    if (compress_k) {
      j["compress_k"] = *compress_k;
      j["compress_words"] = compress_words;
    }
    put("inputs", inputs, !inputs.empty());
    return j;
  }
};

inline std::vector<std::string> command_names() {
  return {"gen", "beta", "cost", "equiv", "hyperfinite", "expansion", "tower", "sandwich", "report-merge"};
}

namespace detail {

inline Rational parse_rational(const std::string& text) {
  try {
    if (auto slash = text.find('/'); slash != std::string::npos)
      return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    if (auto dot = text.find('.'); dot != std::string::npos) {
      const auto frac = text.substr(dot + 1);
      BigInt scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      const auto whole = text.substr(0, dot);
      return Rational(BigInt((whole.empty() || whole == "-" ? whole + "0" : whole) + frac), scale);
    }
    return Rational(BigInt(text));
  } catch (const std::exception&) {
    throw ConfigError("not a rational number: '" + text + "'");
  }
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  try {
    return read_edge_list(in);
  } catch (const GraphError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

/// Sequence named by --family/--window, --tower-file/--window or --graph.
inline GraphSequence load_sequence(const std::string& family, const nlohmann::json& params,
                                   const std::string& window, const std::vector<std::string>& files,
                                   const std::string& tower_file, std::uint64_t seed) {
  try {
    if (!files.empty()) {
      if (!family.empty() || !tower_file.empty()) throw ConfigError("use either --graph or --family, not both");
      std::vector<Graph> graphs;
      for (const auto& f : files) graphs.push_back(load_graph(f));
      auto indices = window.empty() ? std::vector<std::int64_t>{} : parse_window(window);
      return GraphSequence::from_graphs(std::filesystem::path(files.front()).stem().string(), std::move(graphs),
                                        std::move(indices));
    }
    if (!tower_file.empty()) {
      auto tower = read_tower_file(tower_file);
      auto indices = window.empty() ? tower.indices : parse_window(window);
      if (indices.empty()) throw ConfigError("tower descriptor lists no indices and --window is missing");
      return GraphSequence::from_tower(std::move(tower), std::move(indices));
    }
    if (family.empty()) throw ConfigError("no sequence given (--family, --tower-file or --graph)");
    if (window.empty()) throw ConfigError("--window is required with --family");
    nlohmann::json p = params;
    if (!p.contains("seed")) p["seed"] = seed;
    return GraphSequence::from_family(family, p, parse_window(window));
  } catch (const SequenceError& e) {
    throw ConfigError(e.what());
  } catch (const GroupError& e) {
    throw ConfigError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("tower descriptor: ") + e.what());
  }
}

inline std::vector<FieldSpec> parse_fields(const std::vector<std::string>& names) {
  std::vector<FieldSpec> out;
  try {
    for (const auto& n : names) out.push_back(FieldSpec::parse(n));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (out.empty()) throw ConfigError("no fields given");
  return out;
}

inline nlohmann::json graph_summary(const Graph& g) {
  const auto gi = girth(g);
  return {{"vertices", g.vertex_count()},
          {"edges", g.edge_count()},
          {"max_degree", g.max_degree()},
          {"components", component_count(g)},
          {"girth", gi ? nlohmann::json(*gi) : nlohmann::json(nullptr)}};
}

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace detail

/// Checks the configuration and loads all inputs before any computation.
struct PreparedRun {
  RunConfig config;
  std::optional<GraphSequence> seq;
  std::optional<GraphSequence> seq_b;
  std::vector<FieldSpec> fields;
  std::vector<CostStrategy> strategies;
  std::optional<Rational> epsilon;
  std::optional<CoveringFamily> covering;
  std::optional<TowerSpec> tower;
  std::vector<std::int64_t> indices;
  std::vector<nlohmann::json> inputs;
};

inline PreparedRun prepare(const RunConfig& cfg) {
  PreparedRun run{cfg};
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), cfg.command) == names.end())
    throw ConfigError("unknown command '" + cfg.command + "'");
  if (cfg.jobs == 0) throw ConfigError("--jobs must be >= 1");
  for (auto p : cfg.primes)
    if (!is_prime(p)) throw ConfigError(std::to_string(p) + " is not prime");
  const auto& c = cfg.command;
  auto seq = [&] {
    return detail::load_sequence(cfg.family, cfg.params, cfg.window, cfg.graph_files, cfg.tower_file, cfg.seed);
  };
  try {
    if (c == "gen" || c == "beta" || c == "cost" || c == "equiv" || c == "hyperfinite" || c == "sandwich")
      run.seq = seq();
    if (c == "equiv") {
      run.seq_b = detail::load_sequence(cfg.family_b, cfg.params, cfg.window, cfg.graph_files_b, "", cfg.seed);
    }
    if (c == "beta" || c == "sandwich") {
      if (cfg.q_max < 3) throw ConfigError("--qmax must be >= 3");
      if (cfg.cell_timeout && *cfg.cell_timeout <= 0) throw ConfigError("--timeout must be positive");
    }
    if (c == "beta") run.fields = detail::parse_fields(cfg.fields);
    if (c == "cost" || c == "sandwich") {
      if (c == "cost" && cfg.strategies.empty()) throw ConfigError("cost needs at least one --strategy");
      for (const auto& s : cfg.strategies) {
        run.strategies.push_back(CostStrategy::parse(s));
        run.strategies.back().block_cap = cfg.block_cap;
      }
    }
    if (c == "hyperfinite") {
      if (cfg.partitioner.empty()) throw ConfigError("hyperfinite needs --partitioner");
      if (cfg.partitioner == "covering") {
        if (cfg.covering_file.empty()) throw ConfigError("--partitioner covering needs --covering");
        run.covering = read_covering_family(read_json_file(cfg.covering_file));
      } else {
        const auto s = CostStrategy::parse(cfg.partitioner);
        if (s.kind != CostStrategy::Kind::BoxPartition && s.kind != CostStrategy::Kind::TreePartition)
          throw ConfigError("--partitioner must be box:<s>, tree:<q> or covering");
      }
      if (cfg.epsilon) run.epsilon = detail::parse_rational(*cfg.epsilon);
    }
    if (c == "expansion") {
      if (cfg.m == 0) throw ConfigError("--m must be >= 1");
      if (cfg.m > cfg.m_cap) throw ConfigError("--m exceeds the cap " + std::to_string(cfg.m_cap));
      if (cfg.graph_files.size() > 1) throw ConfigError("expansion takes one --graph");
      if (cfg.graph_files.empty()) {
        run.seq = seq();
        if (run.seq->size() != 1) throw ConfigError("expansion takes a single index (--window n)");
      }
    }
    if (c == "tower") {
      if (!cfg.tower_file.empty())
        run.tower = read_tower_file(cfg.tower_file);
      else if (!cfg.family.empty())
        run.tower = preset_tower(cfg.family);
      else
        throw ConfigError("tower needs --family or --tower-file");
      run.indices = cfg.window.empty() ? run.tower->indices : parse_window(cfg.window);
      if (run.indices.empty()) throw ConfigError("tower needs --window or descriptor indices");
      if (cfg.compress_k && cfg.compress_words.empty()) throw ConfigError("--compress-k needs --subgroup words");
      for (const auto& w : cfg.compress_words) parse_word(w, run.tower->labels());
    }
    if (c == "report-merge") {
      if (cfg.inputs.empty()) throw ConfigError("report-merge needs input reports");
      for (const auto& path : cfg.inputs) {
        auto j = read_json_file(path);
        if (j.value("schema", std::string()) != kReportSchema)
          throw ConfigError(path + ": not a " + std::string(kReportSchema) + " report");
        run.inputs.push_back(std::move(j));
      }
    }
  } catch (const SequenceError& e) {
    throw ConfigError(e.what());
  } catch (const GroupError& e) {
    throw ConfigError(e.what());
  } catch (const PartitionError& e) {
    throw ConfigError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(e.what());
  }
  return run;
}

namespace detail {

inline void run_gen(PreparedRun& run, Report& rep) {
  auto& seq = *run.seq;
  seq.materialize(run.config.jobs);
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto row = graph_summary(seq.graph(i));
    row["n"] = seq.window()[i];
    if (!run.config.out_dir.empty()) {
      const auto name = seq.family() + "_" + std::to_string(seq.window()[i]) + ".edges";
      std::filesystem::create_directories(run.config.out_dir);
      write_edge_list_file((std::filesystem::path(run.config.out_dir) / name).string(), seq.graph(i));
      row["file"] = name;
    }
    rows.push_back(std::move(row));
  }
  rep.results = {{"sequence", seq.describe()}, {"graphs", rows}};
}

inline void run_beta(PreparedRun& run, Report& rep) {
  auto& seq = *run.seq;
  seq.materialize(run.config.jobs);
  const auto beta = beta_estimate(seq, run.fields, run.config.q_max, {run.config.jobs, run.config.cell_timeout});
  rep.results = {{"sequence", seq.describe()}, {"edge_number", edge_number_json(edge_number_estimate(seq))},
                 {"beta", beta_json(beta)}};
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : beta.cells) cells.push_back({{"n", c.n}, {"q", c.q}, {"field", c.field.name()}, {"seconds", c.seconds}});
  rep.timings["cells"] = cells;
  if (beta.partial) {
    rep.status = "partial";
    rep.errors.push_back("some cells timed out; beta proxy uses completed cells only");
  }
  if (!run.config.csv.empty()) {
    std::ostringstream out;
    write_beta_csv(out, seq.family(), beta);
    write_text_file(run.config.csv, out.str());
  }
}

inline void run_cost(PreparedRun& run, Report& rep) {
  auto& seq = *run.seq;
  seq.materialize(run.config.jobs);
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : run.strategies) {
    try {
      out.push_back(cost_json(cost_upper_bound(seq, s, run.config.jobs)));
    } catch (const SequenceError& e) {
      throw ConfigError(e.what());
    } catch (const PartitionError& e) {
      throw ConfigError(e.what());
    } catch (const GroupError& e) {
      throw ConfigError(e.what());
    }
  }
  rep.results = {{"sequence", seq.describe()}, {"edge_number", edge_number_json(edge_number_estimate(seq))},
                 {"costs", out}};
}

inline void run_equiv(PreparedRun& run, Report& rep) {
  run.seq->materialize(run.config.jobs);
  run.seq_b->materialize(run.config.jobs);
  try {
    rep.results = {{"sequence_a", run.seq->describe()},
                   {"sequence_b", run.seq_b->describe()},
                   {"equivalence", equivalence_json(certify_equivalence(*run.seq, *run.seq_b))}};
  } catch (const SequenceError& e) {
    throw ConfigError(e.what());
  }
}

inline void run_hyperfinite(PreparedRun& run, Report& rep) {
  auto& seq = *run.seq;
  seq.materialize(run.config.jobs);
  nlohmann::json rows = nlohmann::json::array();
  bool all_pass = true;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& g = seq.graph(i);
    nlohmann::json row{{"n", seq.window()[i]}};
    Partition p;
    if (run.covering) {
      const auto cp = partition_from_covering(g, *run.covering);
      p = cp.partition;
      row["covering"] = {{"measured_omega", rational_json(cp.check.measured_omega)},
                         {"omega", rational_json(cp.check.omega)},
                         {"size_cap", cp.check.size_cap},
                         {"bound", rational_json(cp.bound)},
                         {"within_bound", cp.partition.cut_ratio <= cp.bound},
                         {"private_blocks", cp.private_blocks},
                         {"leftover_chunks", cp.leftover_chunks}};
    } else {
      const auto s = CostStrategy::parse(run.config.partitioner);
      if (s.kind == CostStrategy::Kind::BoxPartition) {
        if (seq.kind() != GraphSequence::Kind::Tower) throw ConfigError("box partition needs a torus tower");
        p = box_partition(g, seq.cayley(i).labels, s.parameter);
      } else {
        const auto tp = tree_partition(g, static_cast<std::uint32_t>(s.parameter));
        p = tp.partition;
        row["net"] = tp.net;
        row["bound_blocks_le_V_over_q"] = tp.partition.block_count * s.parameter <= static_cast<std::int64_t>(g.vertex_count());
      }
    }
    row["partition"] = partition_json(p);
    if (run.epsilon || run.config.block_cap) {
      const auto v = validate_partition(g, p, run.epsilon.value_or(Rational(BigInt(g.edge_count()) + 1)),
                                        run.config.block_cap.value_or(g.vertex_count()));
      row["validation"] = {{"pass", v.pass}, {"stats_consistent", v.stats_consistent},
                           {"max_block_size", v.max_block_size}, {"cut_ratio", rational_json(v.cut_ratio)}};
      all_pass = all_pass && v.pass;
    }
    rows.push_back(std::move(row));
  }
  rep.results = {{"sequence", seq.describe()}, {"partitions", rows}, {"all_pass", all_pass}};
}

inline void run_expansion(PreparedRun& run, Report& rep) {
  Graph g;
  bool transitive = false;
  nlohmann::json source;
  if (!run.config.graph_files.empty()) {
    g = load_graph(run.config.graph_files.front());
    source = {{"graph_file", run.config.graph_files.front()}};
  } else {
    run.seq->materialize(1);
    g = run.seq->graph(0);
    transitive = run.seq->kind() == GraphSequence::Kind::Tower;
    source = run.seq->describe();
  }
  ExpansionOptions opt;
  opt.max_set_size_cap = run.config.m_cap;
  opt.vertex_transitive = run.config.vertex_transitive.value_or(transitive);
  opt.jobs = run.config.jobs;
  const auto start = std::chrono::steady_clock::now();
  try {
    rep.results = {{"source", source}, {"graph", graph_summary(g)},
                   {"expansion", expansion_json(min_small_set_expansion(g, run.config.m, opt))}};
  } catch (const PartitionError& e) {
    throw ConfigError(e.what());
  }
  rep.timings["search_seconds"] = seconds_since(start);
}

inline void run_tower(PreparedRun& run, Report& rep) {
  const auto& tower = *run.tower;
  nlohmann::json rows = nlohmann::json::array();
  std::vector<nlohmann::json> slots(run.indices.size());
  parallel_for(run.config.jobs, run.indices.size(), [&](std::size_t i) {
    const auto n = run.indices[i];
    const auto cg = cayley_graph(tower, n);
    auto row = graph_summary(cg.graph);
    row["n"] = n;
    row["index"] = cg.order();
    row["collapsed"] = cg.collapsed;
    if (tower.relators) {
      nlohmann::json homology = nlohmann::json::object();
      for (auto p : run.config.primes) {
        const auto h = schreier_homology_dim(tower, n, p);
        homology["F" + std::to_string(p)] = {{"dim", h.dim_p},
                                             {"gradient_term", rational_json(h.gradient_term)},
                                             {"relator_rank", h.relator_rank},
                                             {"cyclomatic", h.cyclomatic},
                                             {"degenerate", h.degenerate}};
      }
      row["homology"] = homology;
    }
    if (const auto r = known_rank_gradient_term(tower, n)) row["rank_gradient_term"] = rational_json(*r);
    if (run.config.compress_k) {
      std::vector<Word> words;
      for (const auto& w : run.config.compress_words) words.push_back(parse_word(w, tower.labels()));
      const auto c = coset_compression(tower, *run.config.compress_k, n, words);
      row["compression"] = {{"edges", c.h.edge_count()},
                            {"edge_ratio", rational_json(c.edge_ratio)},
                            {"edge_bound", rational_json(c.edge_bound)},
                            {"within_edge_bound", c.edge_ratio <= c.edge_bound},
                            {"forest_edges", c.forest_edges.size()},
                            {"subgroup_size", c.subgroup.size()},
                            {"t", c.t},
                            {"L", c.lipschitz},
                            {"witness", witness_json(c.witness)}};
    }
    slots[i] = std::move(row);
  });
  for (auto& s : slots) rows.push_back(std::move(s));
  rep.results = {{"tower", tower_to_json(tower)}, {"indices", rows}};
  if (!run.config.out_dir.empty()) {
    std::filesystem::create_directories(run.config.out_dir);
    write_json_file((std::filesystem::path(run.config.out_dir) / (tower.family_name + ".tower.json")).string(),
                    tower_to_json(tower));
  }
}

inline void run_sandwich(PreparedRun& run, Report& rep) {
  auto& seq = *run.seq;
  seq.materialize(run.config.jobs);
  // a strategy that does not fit the input is a configuration error
  const auto s = [&] {
    try {
      return sandwich_report(seq, run.config.primes, run.config.q_max, run.strategies,
                             {run.config.jobs, run.config.cell_timeout});
    } catch (const SequenceError& e) {
      throw ConfigError(e.what());
    } catch (const PartitionError& e) {
      throw ConfigError(e.what());
    } catch (const GroupError& e) {
      throw ConfigError(e.what());
    }
  }();
  rep.results = {{"sequence", seq.describe()}, {"sandwich", sandwich_json(s)}};
  if (s.beta.partial) {
    rep.status = "partial";
    rep.errors.push_back("some cells timed out");
  }
  if (!s.violations.empty()) {
    rep.status = "failed";
    rep.errors.push_back("s_q over Q exceeded s_q over F_p in some cell");
  }
}

inline void run_merge(PreparedRun& run, Report& rep) {
  nlohmann::json sources = nlohmann::json::array();
  std::vector<std::pair<std::string, nlohmann::json>> cells;
  for (std::size_t i = 0; i < run.inputs.size(); ++i) {
    const auto& j = run.inputs[i];
    sources.push_back({{"path", std::filesystem::path(run.config.inputs[i]).filename().string()},
                       {"command", j.value("command", std::string())},
                       {"determinism_hash", j.value("determinism_hash", std::string())},
                       {"hash_verified", verify_report_hash(j)},
                       {"config", j.value("config", nlohmann::json::object())}});
    const auto& r = j.value("results", nlohmann::json::object());
    const nlohmann::json* beta = nullptr;
    if (r.contains("beta"))
      beta = &r.at("beta");
    else if (r.contains("sandwich"))
      beta = &r.at("sandwich").at("beta");
    if (beta) {
      const auto family = r.contains("sequence") ? r.at("sequence").value("family", std::string()) : std::string();
      for (const auto& c : beta->at("cells")) cells.emplace_back(family, c);
    }
  }
  nlohmann::json merged = nlohmann::json::array();
  for (const auto& [family, c] : cells) {
    auto row = c;
    row["family"] = family;
    merged.push_back(std::move(row));
  }
  rep.results = {{"sources", sources}, {"cells", merged}};
  for (const auto& s : sources)
    if (!s.at("hash_verified").get<bool>()) {
      rep.status = "failed";
      rep.errors.push_back("determinism hash mismatch in " + s.at("path").get<std::string>());
    }
  if (!run.config.csv.empty()) {
    std::ostringstream out;
    write_cells_csv(out, cells);
    write_text_file(run.config.csv, out.str());
  }
}

}  // namespace detail

/// Runs a prepared command. Computation errors are recorded in the report
/// (status "failed"); I/O errors propagate.
inline Report run_prepared(PreparedRun& run) {
  Report rep;
  rep.command = run.config.command;
  rep.config = run.config.to_json();
  rep.execution = {{"jobs", run.config.jobs}, {"out", run.config.out}, {"csv", run.config.csv},
                   {"out_dir", run.config.out_dir}};
  const auto start = std::chrono::steady_clock::now();
  const auto& c = run.config.command;
  try {
    if (c == "gen") detail::run_gen(run, rep);
    else if (c == "beta") detail::run_beta(run, rep);
    else if (c == "cost") detail::run_cost(run, rep);
    else if (c == "equiv") detail::run_equiv(run, rep);
    else if (c == "hyperfinite") detail::run_hyperfinite(run, rep);
    else if (c == "expansion") detail::run_expansion(run, rep);
    else if (c == "tower") detail::run_tower(run, rep);
    else if (c == "sandwich") detail::run_sandwich(run, rep);
    else if (c == "report-merge") detail::run_merge(run, rep);
  } catch (const std::ios_base::failure&) {
    throw;
  } catch (const std::filesystem::filesystem_error& e) {
    throw std::ios_base::failure(e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    rep.status = "failed";
    rep.errors.push_back(e.what());
  }
  rep.timings["total_seconds"] = detail::seconds_since(start);
  return rep;
}

inline Report run_config(const RunConfig& cfg) {
  auto run = prepare(cfg);
  return run_prepared(run);
}

/// Full pipeline with exit codes: 0 ok, 1 invalid config, 2 computation
/// failure (report still written), 3 I/O.
inline int execute(const RunConfig& cfg, std::ostream& err = std::cerr) {
  std::optional<PreparedRun> run;
  try {
    run = prepare(cfg);
  } catch (const ConfigError& e) {
    err << "graphseq: invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    err << "graphseq: " << e.what() << "\n";
    return kExitIo;
  }
  Report rep;
  try {
    rep = run_prepared(*run);
  } catch (const ConfigError& e) {
    err << "graphseq: invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    err << "graphseq: " << e.what() << "\n";
    return kExitIo;
  }
  const auto j = rep.to_json();
  try {
    if (cfg.out.empty() || cfg.out == "-")
      std::cout << j.dump(2) << "\n";
    else
      write_json_file(cfg.out, j);
  } catch (const std::ios_base::failure& e) {
    err << "graphseq: " << e.what() << "\n";
    return kExitIo;
  }
  for (const auto& e : rep.errors) err << "graphseq: " << e << "\n";
  return rep.status == "ok" ? kExitOk : kExitComputation;
}

}  // namespace graphseq
