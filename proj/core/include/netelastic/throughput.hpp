#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "netelastic/graph.hpp"
#include "netelastic/shortest_path.hpp"

namespace netelastic {

enum class RoutingModel { dijkstra_homogeneous, dijkstra_heterogeneous, lp_optimization };

const char* to_string(RoutingModel model) noexcept;
RoutingModel parse_routing_model(const std::string& name);

struct ThroughputModel {
  RoutingModel kind = RoutingModel::dijkstra_homogeneous;
  TieBreak tie_break;
};

/// A directed arc of the full-duplex link model. Every undirected edge is two
/// arcs, each with unit capacity.
struct Arc {
  NodeId tail = 0;
  NodeId head = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Arcs of `g` in canonical order: by tail, then by head.
std::vector<Arc> directed_arcs(const Graph& g);

struct PairFlow {
  NodeId source = 0;
  NodeId target = 0;
  double delivered = 0.0;
};

enum class ThroughputDetail { totals, per_pair };

struct ThroughputResult {
  /// Total delivered flow summed over ordered pairs.
  double raw_throughput = 0.0;
  /// Ordered pairs with positive delivery, sorted by (source, target). Only
  /// filled for ThroughputDetail::per_pair.
  std::vector<PairFlow> per_pair;
  /// Utilization per arc in directed_arcs() order. Only filled for
  /// ThroughputDetail::per_pair.
  std::vector<double> arc_utilization;
};

/// One flow per ordered connected pair along the tie-broken shortest path;
/// every pair gets the same rate 1 / (max arc load).
ThroughputResult throughput_dijkstra_homogeneous(
    const Graph& g, const ThroughputModel& model = {},
    ThroughputDetail detail = ThroughputDetail::per_pair);

/// Residual filling on shortest paths: each round routes all still-routable
/// pairs on shortest paths over arcs with remaining capacity and pushes the
/// largest common increment, until no pair can be routed.
ThroughputResult throughput_dijkstra_heterogeneous(
    const Graph& g, const ThroughputModel& model = {},
    ThroughputDetail detail = ThroughputDetail::per_pair);

/// Iterated maximum concurrent flow: solve max delta over the routable pairs
/// on the residual capacities, commit it, repeat until nothing is routable.
/// Throws ParameterError when the graph exceeds the LP size limits.
ThroughputResult throughput_lp(const Graph& g, const ThroughputModel& model = {},
                               ThroughputDetail detail = ThroughputDetail::per_pair);

ThroughputResult throughput(const Graph& g, const ThroughputModel& model,
                            ThroughputDetail detail = ThroughputDetail::totals);

/// Largest graph (active nodes) the LP model accepts.
inline constexpr std::size_t kLpMaxNodes = 30;

/// One maximum-concurrent-flow solve on given residual capacities.
struct ConcurrentFlowSolution {
  double delta = 0.0;
  std::vector<Arc> arcs;
  std::vector<double> capacity;
  /// flow[s][a]: flow of source s's commodity on arc a (sources indexed by
  /// node id, empty for sources without routable destinations).
  std::vector<std::vector<double>> flow;
  /// routable[s]: destinations that receive delta from s.
  std::vector<std::vector<NodeId>> routable;
};

/// Maximizes the uniform rate delta such that every pair connected through
/// arcs with capacity above tolerance receives delta. Among optimal flows
/// returns one of least total utilization.
ConcurrentFlowSolution solve_concurrent_flow(const Graph& g,
                                             std::span<const double> capacity);

struct ModelComparison {
  double lp = 0.0;
  double heterogeneous = 0.0;
  double homogeneous = 0.0;
};

ModelComparison compare_models(const Graph& g, const TieBreak& tie = TieBreak::sequential());

}  // namespace netelastic
