#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "netelastic/generators.hpp"
#include "netelastic/robustness.hpp"
#include "netelastic/throughput.hpp"

namespace netelastic {

struct EdgeListSource {
  std::filesystem::path path;
};

/// Precomputed scores for a topology that is not simulated, e.g. values
/// published for a network whose edge list is unavailable.
struct InjectedScores {
  std::size_t nodes = 0;
  std::size_t links = 0;
  double elas_r = 0.0;
  double elas_d = 0.0;
  double elas_b = 0.0;
  std::optional<double> heterogeneity;
  std::optional<double> asp;
  std::optional<std::size_t> diameter;
};

using TopologySource = std::variant<GeneratorSpec, EdgeListSource, InjectedScores>;

struct TopologyConfig {
  std::string name;
  TopologySource source;
  std::optional<std::size_t> batch;  // overrides the experiment-wide batch
};

struct ExperimentConfig {
  std::vector<TopologyConfig> topologies;
  std::vector<AttackKind> attacks{AttackKind::random, AttackKind::highest_degree,
                                  AttackKind::highest_betweenness};
  bool recompute = true;
  std::size_t batch = 1;
  ThroughputModel model;
  bool tie_seed_given = false;
  double stop_fraction = 1.0;
  TradeoffParams tradeoff;
  std::filesystem::path output_dir = "results";
  std::uint64_t global_seed = 0;
  std::size_t workers = 1;

  void validate() const;
};

/// Parses the INI-style experiment file. An `[experiment]` section holds the
/// run-wide keys; each `[topology <name>]` section declares one topology by
/// `family = ...` (generator), `edge_list = <path>`, or `family = injected`.
/// Relative paths resolve against `base_dir`. Throws ParseError or
/// ParameterError.
ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Seed for a topology, stable under adding or removing other topologies.
std::uint64_t topology_seed(std::uint64_t global_seed, std::string_view name);

/// One row of the cost-aware ranking. Elasticities of failed cells are NaN.
struct RankingRow {
  std::string name;
  std::size_t nodes = 0;
  std::size_t links = 0;
  double elas_r = 0.0;
  double elas_d = 0.0;
  double elas_b = 0.0;
  double re_score = 0.0;
};

struct CellOutcome {
  std::string topology;
  AttackKind attack = AttackKind::random;
  double elasticity = 0.0;
  std::string error;  // empty on success
};

struct ExperimentReport {
  std::vector<RankingRow> rows;  // declaration order
  std::vector<CellOutcome> cells;
  std::size_t failures = 0;
};

/// Runs every (topology, attack) cell and writes metrics.csv, ranking.csv,
/// tradeoff.csv, correlations.csv, curves/<topology>_<attack>.csv and run.log
/// under config.output_dir. Per-topology failures are logged and reported as
/// NaN; only an unwritable output directory aborts the run (IoError).
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Pearson correlation over the index-aligned finite pairs; NaN when fewer
/// than two such pairs exist or either side has zero variance.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace netelastic
