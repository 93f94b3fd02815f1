// Command-line front end: generate, metrics, attack, elasticity, bound,
// tradeoff, run.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "netelastic/errors.hpp"
#include "netelastic/experiment.hpp"
#include "netelastic/generators.hpp"
#include "netelastic/graph.hpp"
#include "netelastic/metrics.hpp"
#include "netelastic/robustness.hpp"
#include "netelastic/throughput.hpp"

namespace ne = netelastic;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitParameter = 3;
constexpr int kExitCompute = 4;
constexpr int kExitIo = 5;

int exit_code(ne::ErrorKind kind) {
  switch (kind) {
    case ne::ErrorKind::parse:
      return kExitParse;
    case ne::ErrorKind::parameter:
      return kExitParameter;
    case ne::ErrorKind::compute:
      return kExitCompute;
    case ne::ErrorKind::io:
      return kExitIo;
  }
  return 1;
}

ne::Graph read_graph(const std::string& path) {
  if (path == "-") return ne::load_edge_list(std::cin);
  return ne::load_edge_list_file(path);
}

// Accepts "1000", "1e9" and similar as long as the value is a whole number.
std::uint64_t whole_number(const std::string& flag, const std::string& text) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(x >= 0.0) || x > 1.8e19 || std::floor(x) != x) {
    throw ne::ParameterError(fmt::format("{}: expected a whole number, got '{}'", flag, text));
  }
  return static_cast<std::uint64_t>(x);
}

struct GenerateArgs {
  std::string family;
  std::size_t n = 0;
  double p = 0.0;
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool diagonals = false;
  std::uint64_t seed = 0;
  std::string output = "-";
};

struct AttackArgs {
  std::string graph;
  std::string strategy = "random";
  std::uint64_t seed = 0;
  bool static_rank = false;
  std::size_t batch = 1;
  std::optional<std::size_t> limit;
};

struct ElasticityArgs {
  AttackArgs attack;
  std::string model = "dijkstra_homogeneous";
  std::string tie_break = "sequential";
  std::uint64_t tie_seed = 0;
  double stop = 1.0;
};

struct BoundArgs {
  std::string n;
  std::string mode = "continuous";
  std::optional<std::string> zeta;
};

struct TradeoffArgs {
  double a = 0.0, b = 0.0, c = 0.0;
  std::string n, m;
  ne::TradeoffParams params;
};

ne::AttackStrategy make_strategy(const AttackArgs& a) {
  ne::AttackStrategy s;
  s.kind = ne::parse_attack_kind(a.strategy);
  s.seed = a.seed;
  s.recompute = !a.static_rank;
  s.batch = a.batch;
  return s;
}

void add_attack_options(CLI::App* cmd, AttackArgs& a) {
  cmd->add_option("graph", a.graph, "Edge-list file ('-' for stdin)")->required();
  cmd->add_option("--strategy", a.strategy,
                  "random | highest_degree | highest_betweenness");
  cmd->add_option("--seed", a.seed, "Seed for the random strategy");
  cmd->add_flag("--static", a.static_rank, "Rank once on the intact graph");
  cmd->add_option("--batch", a.batch, "Nodes removed per re-ranking / evaluation");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robustness (elasticity) analysis of network topologies"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic topology as an edge list");
  generate->add_option("--family", gen.family,
                       "gilbert | watts_strogatz | preferential_attachment | near_regular | mesh")
      ->required();
  generate->add_option("--n", gen.n, "Node count");
  generate->add_option("--p", gen.p, "Edge or rewiring probability");
  generate->add_option("--k", gen.k, "Watts-Strogatz ring degree");
  generate->add_option("--m", gen.m, "Links per arriving node");
  generate->add_option("--rows", gen.rows, "Grid rows");
  generate->add_option("--cols", gen.cols, "Grid columns");
  generate->add_flag("--diagonals", gen.diagonals, "Connect grid diagonals");
  generate->add_option("--seed", gen.seed, "RNG seed");
  generate->add_option("-o,--output", gen.output, "Output file ('-' for stdout)");

  std::string metrics_graph;
  std::string metrics_name = "graph";
  auto* metrics = app.add_subcommand("metrics", "Print structural metrics as CSV");
  metrics->add_option("graph", metrics_graph, "Edge-list file ('-' for stdin)")->required();
  metrics->add_option("--name", metrics_name, "Name column value");

  AttackArgs attack;
  auto* attack_cmd = app.add_subcommand("attack", "Print the node removal order");
  add_attack_options(attack_cmd, attack);
  attack_cmd->add_option("--limit", attack.limit, "Stop after this many nodes");

  ElasticityArgs elas;
  auto* elas_cmd = app.add_subcommand("elasticity", "Run one attack and print the curve");
  add_attack_options(elas_cmd, elas.attack);
  elas_cmd->add_option("--model", elas.model,
                       "dijkstra_homogeneous | dijkstra_heterogeneous | lp_optimization");
  elas_cmd->add_option("--tie-break", elas.tie_break, "sequential | random");
  elas_cmd->add_option("--tie-seed", elas.tie_seed, "Seed for random tie-breaking");
  elas_cmd->add_option("--stop", elas.stop, "Fraction of nodes to remove, in (0, 1]");

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Analytic mesh elasticity");
  bound_cmd->add_option("--n", bound.n, "Mesh size")->required();
  bound_cmd->add_option("--mode", bound.mode, "discrete | continuous");
  bound_cmd->add_option("--zeta", bound.zeta, "Nodes removed (default: all)");

  TradeoffArgs trade;
  auto* trade_cmd = app.add_subcommand("tradeoff", "Cost-aware robustness score Re");
  trade_cmd->add_option("--a", trade.a, "Elasticity under random attack")->required();
  trade_cmd->add_option("--b", trade.b, "Elasticity under highest-degree attack")->required();
  trade_cmd->add_option("--c", trade.c, "Elasticity under highest-betweenness attack")
      ->required();
  trade_cmd->add_option("--n", trade.n, "Node count")->required();
  trade_cmd->add_option("--m", trade.m, "Link count")->required();
  trade_cmd->add_option("--alpha", trade.params.alpha_tol, "Random-attack weight");
  trade_cmd->add_option("--beta", trade.params.beta_tol, "Degree-attack weight");
  trade_cmd->add_option("--delta", trade.params.delta_tol, "Betweenness-attack weight");
  trade_cmd->add_option("--gamma", trade.params.gamma_tol, "Excess-link penalty weight");

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Execute an experiment config file");
  run_cmd->add_option("config", config_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (*generate) {
      ne::GeneratorSpec spec;
      spec.family = ne::parse_generator_family(gen.family);
      spec.n = spec.family == ne::GeneratorFamily::near_regular && gen.n == 0
                   ? gen.rows * gen.cols
                   : gen.n;
      spec.p = gen.p;
      spec.k = gen.k;
      spec.m = gen.m;
      spec.rows = gen.rows;
      spec.cols = gen.cols;
      spec.diagonals = gen.diagonals;
      spec.seed = gen.seed;
      const ne::Graph g = ne::generate(spec);
      if (gen.output == "-") {
        ne::write_edge_list(std::cout, g);
      } else {
        std::ofstream out(gen.output);
        if (!out) throw ne::IoError(fmt::format("cannot write '{}'", gen.output));
        ne::write_edge_list(out, g);
      }
    } else if (*metrics) {
      const ne::Graph g = read_graph(metrics_graph);
      const ne::MetricsReport m = ne::metrics(g, false);
      std::cout << ne::kMetricsCsvHeader << '\n' << ne::metrics_csv_row(metrics_name, m) << '\n';
    } else if (*attack_cmd) {
      const ne::Graph g = read_graph(attack.graph);
      for (ne::NodeId v : ne::attack_sequence(g, make_strategy(attack), attack.limit)) {
        std::cout << v << '\n';
      }
    } else if (*elas_cmd) {
      const ne::Graph g = read_graph(elas.attack.graph);
      ne::ThroughputModel model;
      model.kind = ne::parse_routing_model(elas.model);
      if (elas.tie_break == "random") {
        model.tie_break = ne::TieBreak::random(elas.tie_seed);
      } else if (elas.tie_break != "sequential") {
        throw ne::ParameterError(fmt::format("unknown tie-break '{}'", elas.tie_break));
      }
      const ne::AttackStrategy strategy = make_strategy(elas.attack);
      const ne::ElasticityCurve curve = ne::elasticity(g, strategy, model, elas.stop);
      std::cout << ne::curve_to_csv(curve, strategy, model);
    } else if (*bound_cmd) {
      const std::uint64_t n = whole_number("--n", bound.n);
      std::optional<std::uint64_t> zeta;
      if (bound.zeta) zeta = whole_number("--zeta", *bound.zeta);
      double value = 0.0;
      if (bound.mode == "discrete") {
        value = ne::mesh_elasticity_discrete(n, zeta.value_or(n));
      } else if (bound.mode == "continuous") {
        value = ne::mesh_elasticity_continuous(n, zeta);
      } else {
        throw ne::ParameterError(fmt::format("unknown mode '{}'", bound.mode));
      }
      std::cout << ne::format_number(value) << '\n';
    } else if (*trade_cmd) {
      const double re =
          ne::tradeoff_re(trade.a, trade.b, trade.c, whole_number("--n", trade.n),
                          whole_number("--m", trade.m), trade.params);
      std::cout << ne::format_number(re) << '\n';
    } else if (*run_cmd) {
      const ne::ExperimentConfig cfg = ne::load_experiment_config(config_path);
      const ne::ExperimentReport report = ne::run_experiment(cfg);
      std::cout << fmt::format("wrote {} ({} topologies, {} failures)\n",
                               cfg.output_dir.string(), report.rows.size(),
                               report.failures);
    }
  } catch (const ne::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  }
  return 0;
}
