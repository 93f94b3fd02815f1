#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netelastic/graph.hpp"
#include "netelastic/throughput.hpp"

namespace netelastic {

enum class AttackKind { random, highest_degree, highest_betweenness };

const char* to_string(AttackKind kind) noexcept;
AttackKind parse_attack_kind(const std::string& name);

struct AttackStrategy {
  AttackKind kind = AttackKind::random;
  std::uint64_t seed = 0;  // random only
  bool recompute = true;   // targeted attacks re-rank after every batch
  std::size_t batch = 1;   // nodes removed per throughput evaluation

  void validate() const;
};

/// Removal order for `strategy`, at most `limit` nodes (all active nodes by
/// default). Targeted attacks break ties toward the smallest id; with
/// `recompute` the ranking is refreshed on the shrunken graph after every
/// batch of `batch` removals.
std::vector<NodeId> attack_sequence(const Graph& g, const AttackStrategy& strategy,
                                    std::optional<std::size_t> limit = std::nullopt);

struct CurveSample {
  double fraction_removed = 0.0;
  double normalized_throughput = 0.0;
};

struct ElasticityCurve {
  std::vector<CurveSample> samples;
  double elasticity = 0.0;
  /// Raw throughput of the intact graph; every sample is divided by it.
  double alpha = 0.0;
  std::vector<NodeId> removed;
};

/// Trapezoidal area under the samples.
double trapezoid_area(const std::vector<CurveSample>& samples);

/// Removes nodes in attack order, re-evaluating throughput after each batch,
/// up to ceil(stop_fraction * N) removals. Throws ComputeError when the intact
/// graph has zero throughput.
ElasticityCurve elasticity(const Graph& g, const AttackStrategy& strategy,
                           const ThroughputModel& model, double stop_fraction = 1.0);

/// Mesh elasticity by trapezoidal integration after `zeta` removals
/// (1 <= zeta <= n; zeta == n is full removal).
double mesh_elasticity_discrete(std::uint64_t n, std::uint64_t zeta);

/// Mesh elasticity from the continuous integral. Without `zeta`, or with
/// zeta == n, returns the full-removal value 1/3 - 1/(6n) - 1/(6n^2).
double mesh_elasticity_continuous(std::uint64_t n,
                                  std::optional<std::uint64_t> zeta = std::nullopt);

/// Normalized mesh throughput after k of n nodes are removed.
double mesh_throughput(std::uint64_t n, std::uint64_t k);

struct TradeoffParams {
  double alpha_tol = 1.0;  // weight of random-attack elasticity
  double beta_tol = 1.0;   // weight of highest-degree elasticity
  double delta_tol = 1.0;  // weight of highest-betweenness elasticity
  double gamma_tol = 1.0;  // weight of the excess-link penalty

  void validate() const;
};

/// 1 - exp(-(m - (n - 1)) / (2n)), clamped to 0 below a spanning tree.
double density_penalty(std::uint64_t n, std::uint64_t m);

/// Weighted elasticity scores minus the weighted excess-link penalty.
double tradeoff_re(double elas_r, double elas_d, double elas_b, std::uint64_t n,
                   std::uint64_t m, const TradeoffParams& params = {});

}  // namespace netelastic

namespace netelastic {

/// CSV rendering: a `fraction_removed,normalized_throughput` header, one row
/// per sample, and a trailing `#` comment carrying elasticity, alpha,
/// strategy, model and seed.
std::string curve_to_csv(const ElasticityCurve& curve, const AttackStrategy& strategy,
                         const ThroughputModel& model);

}  // namespace netelastic
