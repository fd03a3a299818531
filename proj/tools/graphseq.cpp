// graphseq: batch front-end for graph-sequence invariants.

#include <graphseq/cli.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

using graphseq::RunConfig;

void add_source(CLI::App* cmd, RunConfig& cfg, std::string& params_text) {
  cmd->add_option("--family", cfg.family,
                  "Tower preset (cycle, torus2, torus2-diag, heisenberg, freeF2-sl2) or generator family "
                  "(cycles, paths, complete, stars, edgeless, random-tree, random-regular, random-connected)");
  cmd->add_option("--window", cfg.window, "Index window lo:hi (inclusive) or a list n1,n2,...");
  cmd->add_option("--graph", cfg.graph_files, "Edge-list files, one per index (instead of --family)");
  cmd->add_option("--tower-file", cfg.tower_file, "Tower descriptor JSON");
  cmd->add_option("--params", params_text, R"(Family parameters as JSON, e.g. '{"degree":3,"girth":9}')");
  cmd->add_option("--seed", cfg.seed, "Seed for random families")->capture_default_str();
}

void add_output(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--out", cfg.out, "Report JSON path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-sequence invariants: edge numbers, cycle-space ranks, costs, partitions and towers"};
  app.set_version_flag("--version", std::string(GRAPHSEQ_VERSION));
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.jobs = graphseq::default_jobs();
  std::string params_text;

  auto jobs_option = [&](CLI::App* cmd) {
    cmd->add_option("--jobs,-j", cfg.jobs, "Worker threads (default from GRAPHSEQ_JOBS, else 1)")
        ->capture_default_str();
  };

  auto* gen = app.add_subcommand("gen", "Generate a family and write edge lists");
  add_source(gen, cfg, params_text);
  gen->add_option("--out-dir", cfg.out_dir, "Directory for <family>_<n>.edges files");
  add_output(gen, cfg);
  jobs_option(gen);

  auto* beta = app.add_subcommand("beta", "s_q tables and beta proxies over a window");
  add_source(beta, cfg, params_text);
  beta->add_option("--qmax", cfg.q_max, "Largest cycle length q")->capture_default_str();
  beta->add_option("--fields", cfg.fields, "Fields: Q, F2, F3, ...")->delimiter(',')->capture_default_str();
  beta->add_option("--timeout", cfg.cell_timeout, "Per-cell time budget in seconds");
  beta->add_option("--csv", cfg.csv, "Write one CSV row per (n, q, field) cell");
  add_output(beta, cfg);
  jobs_option(beta);

  auto* cost = app.add_subcommand("cost", "Cost upper bounds from compression witnesses");
  add_source(cost, cfg, params_text);
  cost->add_option("--strategy", cfg.strategies, "identity | box:<s> | tree:<q> | coset:<k>:<w1>,<w2>,...")
      ->required();
  cost->add_option("--K", cfg.block_cap, "Reject partitions with a block larger than K");
  add_output(cost, cfg);
  jobs_option(cost);

  auto* equiv = app.add_subcommand("equiv", "Certify equivalence of two sequences on the same vertex sets");
  add_source(equiv, cfg, params_text);
  equiv->add_option("--family-b", cfg.family_b, "Second family");
  equiv->add_option("--graph-b", cfg.graph_files_b, "Second sequence as edge-list files");
  add_output(equiv, cfg);
  jobs_option(equiv);

  auto* hyper = app.add_subcommand("hyperfinite", "Bounded-block partitions and their validation");
  add_source(hyper, cfg, params_text);
  hyper->add_option("--partitioner", cfg.partitioner, "box:<s> | tree:<q> | covering")->required();
  hyper->add_option("--covering", cfg.covering_file, "Covering family JSON (list of vertex-id lists)");
  hyper->add_option("--epsilon", cfg.epsilon, "Cut-ratio threshold, e.g. 1/4");
  hyper->add_option("--K", cfg.block_cap, "Block-size threshold");
  add_output(hyper, cfg);
  jobs_option(hyper);

  auto* expansion = app.add_subcommand("expansion", "Exact min |dF|/|F| over sets with |F| <= m");
  add_source(expansion, cfg, params_text);
  expansion->add_option("--m", cfg.m, "Largest set size")->capture_default_str();
  expansion->add_option("--cap", cfg.m_cap, "Refuse m above this cap")->capture_default_str();
  bool all_roots = false, transitive = false;
  expansion->add_flag("--vertex-transitive", transitive, "Search only sets containing vertex 0");
  expansion->add_flag("--all-roots", all_roots, "Search from every vertex (default for non-tower input)");
  add_output(expansion, cfg);
  jobs_option(expansion);

  auto* tower = app.add_subcommand("tower", "Quotient Cayley graphs, homology dimensions and coset compression");
  tower->add_option("--family", cfg.family, "Tower preset");
  tower->add_option("--tower-file", cfg.tower_file, "Tower descriptor JSON");
  tower->add_option("--window", cfg.window, "Quotient indices lo:hi or n1,n2,...");
  tower->add_option("--primes", cfg.primes, "Primes for homology dimensions")->delimiter(',')->capture_default_str();
  tower->add_option("--compress-k", cfg.compress_k, "Coarse index k for coset compression");
  tower->add_option("--subgroup", cfg.compress_words, "Generators of Gamma_k as words, e.g. 'a^2' 'b^2'");
  tower->add_option("--out-dir", cfg.out_dir, "Also write the tower descriptor here");
  add_output(tower, cfg);
  jobs_option(tower);

  auto* sandwich = app.add_subcommand("sandwich", "beta_Q <= beta_Fp <= cost - 1 over a window");
  add_source(sandwich, cfg, params_text);
  sandwich->add_option("--primes", cfg.primes, "Primes p for F_p")->delimiter(',')->capture_default_str();
  sandwich->add_option("--qmax", cfg.q_max, "Largest cycle length q")->capture_default_str();
  sandwich->add_option("--strategy", cfg.strategies, "Extra cost strategies (identity is always included)");
  sandwich->add_option("--timeout", cfg.cell_timeout, "Per-cell time budget in seconds");
  add_output(sandwich, cfg);
  jobs_option(sandwich);

  auto* merge = app.add_subcommand("report-merge", "Verify and merge reports; flatten their cells to CSV");
  merge->add_option("inputs", cfg.inputs, "Report JSON files")->required();
  merge->add_option("--csv", cfg.csv, "Merged CSV output");
  add_output(merge, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return graphseq::kExitConfig;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (all_roots && transitive) {
    std::cerr << "graphseq: --vertex-transitive and --all-roots are exclusive\n";
    return graphseq::kExitConfig;
  }
  if (all_roots) cfg.vertex_transitive = false;
  if (transitive) cfg.vertex_transitive = true;
  if (!params_text.empty()) {
    try {
      cfg.params = nlohmann::json::parse(params_text);
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "graphseq: invalid configuration: --params: " << e.what() << "\n";
      return graphseq::kExitConfig;
    }
    if (!cfg.params.is_object()) {
      std::cerr << "graphseq: invalid configuration: --params must be a JSON object\n";
      return graphseq::kExitConfig;
    }
  }
  return graphseq::execute(cfg);
}
