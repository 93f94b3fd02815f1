#include "netelastic/throughput.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include <fmt/format.h>

#include "netelastic/errors.hpp"
#include "netelastic/simplex.hpp"
#include "routing.hpp"

namespace netelastic {

namespace {

// Residual capacity at or below this is treated as saturated.
constexpr double kSaturated = 1e-9;
// The LP loop stops once the committed rate or the leftover capacity drops
// below this.
constexpr double kLpStop = 1e-7;
// Upper bound on dense simplex tableau entries (~160 MB of doubles).
constexpr std::size_t kMaxTableau = 20'000'000;

using detail::ArcId;
using detail::ArcTable;
using detail::BfsScratch;

// Dense per-pair accumulator; only allocated when per-pair detail is asked for.
class PairMatrix {
 public:
  explicit PairMatrix(std::size_t n, bool enabled) : n_(n) {
    if (enabled) values_.assign(n * n, 0.0);
  }
  bool enabled() const { return !values_.empty(); }
  void add(NodeId s, NodeId t, double x) { values_[s * n_ + t] += x; }

  std::vector<PairFlow> collect() const {
    std::vector<PairFlow> out;
    for (std::size_t s = 0; s < n_; ++s) {
      for (std::size_t t = 0; t < n_; ++t) {
        const double x = values_[s * n_ + t];
        if (x > 0.0) out.push_back({static_cast<NodeId>(s), static_cast<NodeId>(t), x});
      }
    }
    return out;
  }

 private:
  std::size_t n_;
  std::vector<double> values_;
};

}  // namespace

const char* to_string(RoutingModel model) noexcept {
  switch (model) {
    case RoutingModel::dijkstra_homogeneous:
      return "dijkstra_homogeneous";
    case RoutingModel::dijkstra_heterogeneous:
      return "dijkstra_heterogeneous";
    case RoutingModel::lp_optimization:
      return "lp_optimization";
  }
  return "unknown";
}

RoutingModel parse_routing_model(const std::string& name) {
  for (auto m : {RoutingModel::dijkstra_homogeneous, RoutingModel::dijkstra_heterogeneous,
                 RoutingModel::lp_optimization}) {
    if (name == to_string(m)) return m;
  }
  throw ParameterError(fmt::format("unknown throughput model '{}'", name));
}

std::vector<Arc> directed_arcs(const Graph& g) {
  std::vector<Arc> arcs;
  arcs.reserve(2 * g.edge_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId w : g.neighbors(u)) arcs.push_back({u, w});
  }
  return arcs;
}

ThroughputResult throughput_dijkstra_homogeneous(const Graph& g,
                                                 const ThroughputModel& model,
                                                 ThroughputDetail detail) {
  ThroughputResult result;
  const bool per_pair = detail == ThroughputDetail::per_pair;
  if (g.edge_count() == 0) {
    if (per_pair) result.arc_utilization.clear();
    return result;
  }
  const ArcTable arcs(g);
  std::unique_ptr<detail::DenseAdjacency> dense;
  if (model.tie_break.kind == TieBreakKind::sequential &&
      detail::DenseAdjacency::worthwhile(g)) {
    dense = std::make_unique<detail::DenseAdjacency>(g);
  }

  const std::size_t n = g.node_count();
  std::vector<std::uint64_t> load(arcs.arc_count(), 0);
  std::vector<std::uint64_t> subtree(n, 0);
  std::vector<Edge> routed;  // (source, target) pairs, only kept for per-pair detail
  std::uint64_t pairs = 0;
  BfsScratch scratch;

  for (NodeId s = 0; s < n; ++s) {
    if (!g.is_active(s) || g.degree(s) == 0) continue;
    detail::bfs_tree(g, arcs, nullptr, s, model.tie_break, 0, scratch, dense.get());
    const auto& order = scratch.order;
    for (NodeId v : order) subtree[v] = 1;
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      const NodeId v = order[i];
      load[scratch.pred_arc[v]] += subtree[v];
      subtree[scratch.predecessor[v]] += subtree[v];
    }
    pairs += order.size() - 1;
    if (per_pair) {
      for (std::size_t i = 1; i < order.size(); ++i) routed.push_back({s, order[i]});
    }
  }

  const std::uint64_t max_load = *std::max_element(load.begin(), load.end());
  const double rate = max_load > 0 ? 1.0 / static_cast<double>(max_load) : 1.0;
  result.raw_throughput = rate * static_cast<double>(pairs);
  if (per_pair) {
    std::sort(routed.begin(), routed.end(), [](const Edge& a, const Edge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    result.per_pair.reserve(routed.size());
    for (const Edge& e : routed) result.per_pair.push_back({e.u, e.v, rate});
    result.arc_utilization.resize(load.size());
    for (std::size_t a = 0; a < load.size(); ++a) {
      result.arc_utilization[a] = rate * static_cast<double>(load[a]);
    }
  }
  return result;
}

ThroughputResult throughput_dijkstra_heterogeneous(const Graph& g,
                                                   const ThroughputModel& model,
                                                   ThroughputDetail detail) {
  ThroughputResult result;
  const bool per_pair = detail == ThroughputDetail::per_pair;
  const ArcTable arcs(g);
  const std::size_t n = g.node_count();
  const std::size_t m = arcs.arc_count();

  std::vector<double> residual(m, 1.0);
  std::vector<double> utilization(per_pair ? m : 0, 0.0);
  std::vector<std::uint8_t> usable(m, 1);
  std::vector<std::uint64_t> load(m);
  std::vector<std::uint64_t> subtree(n, 0);
  std::vector<Edge> routed;
  PairMatrix delivered(n, per_pair);
  BfsScratch scratch;

  double total = 0.0;
  for (std::uint64_t round = 0; m > 0; ++round) {
    for (std::size_t a = 0; a < m; ++a) usable[a] = residual[a] > kSaturated;
    std::fill(load.begin(), load.end(), 0);
    routed.clear();
    for (NodeId s = 0; s < n; ++s) {
      if (!g.is_active(s) || g.degree(s) == 0) continue;
      detail::bfs_tree(g, arcs, &usable, s, model.tie_break, round, scratch);
      const auto& order = scratch.order;
      for (NodeId v : order) subtree[v] = 1;
      for (std::size_t i = order.size() - 1; i > 0; --i) {
        const NodeId v = order[i];
        load[scratch.pred_arc[v]] += subtree[v];
        subtree[scratch.predecessor[v]] += subtree[v];
        routed.push_back({s, v});
      }
    }
    if (routed.empty()) break;

    double step = std::numeric_limits<double>::infinity();
    ArcId bottleneck = 0;
    for (ArcId a = 0; a < m; ++a) {
      if (load[a] == 0) continue;
      const double r = residual[a] / static_cast<double>(load[a]);
      if (r < step) {
        step = r;
        bottleneck = a;
      }
    }
    for (ArcId a = 0; a < m; ++a) {
      if (load[a] == 0) continue;
      const double used = step * static_cast<double>(load[a]);
      residual[a] = std::max(0.0, residual[a] - used);
      if (per_pair) utilization[a] += used;
    }
    residual[bottleneck] = 0.0;
    total += step * static_cast<double>(routed.size());
    if (per_pair) {
      for (const Edge& e : routed) delivered.add(e.u, e.v, step);
    }
  }

  result.raw_throughput = total;
  if (per_pair) {
    result.per_pair = delivered.collect();
    result.arc_utilization = std::move(utilization);
  }
  return result;
}

namespace {

struct FlowModel {
  lp::Problem problem;
  // var_arc[v] / var_source[v]: the arc and commodity of flow variable v.
  std::vector<ArcId> var_arc;
  std::vector<NodeId> var_source;
  std::size_t first_flow_var = 0;
};

// Builds the concurrent-flow program. With `fixed_rate` negative the rate is
// variable 0 and is maximized; otherwise the rate is a constant and total arc
// usage is minimized.
FlowModel build_flow_model(const ArcTable& arcs, std::span<const double> capacity,
                           const std::vector<std::uint8_t>& usable,
                           const std::vector<std::vector<NodeId>>& routable,
                           double fixed_rate) {
  FlowModel fm;
  const std::size_t n = arcs.node_count();
  const bool maximize_rate = fixed_rate < 0.0;
  fm.first_flow_var = maximize_rate ? 1 : 0;
  std::size_t next_var = fm.first_flow_var;

  // var_of[s][a] for commodity s, or npos.
  constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> var_of(n);
  std::vector<std::uint8_t> in_scope(n);
  for (NodeId s = 0; s < n; ++s) {
    if (routable[s].empty()) continue;
    std::fill(in_scope.begin(), in_scope.end(), 0);
    in_scope[s] = 1;
    for (NodeId t : routable[s]) in_scope[t] = 1;
    var_of[s].assign(arcs.arc_count(), npos);
    for (ArcId a = 0; a < arcs.arc_count(); ++a) {
      if (!usable[a] || !in_scope[arcs.tail[a]] || arcs.head[a] == s) continue;
      var_of[s][a] = next_var++;
      fm.var_arc.push_back(a);
      fm.var_source.push_back(s);
    }
  }

  lp::Problem& p = fm.problem;
  p.num_vars = next_var;
  p.objective.assign(next_var, 0.0);
  p.maximize = maximize_rate;
  if (maximize_rate) {
    p.objective[0] = 1.0;
  } else {
    for (std::size_t v = fm.first_flow_var; v < next_var; ++v) p.objective[v] = 1.0;
  }

  // Conservation: for each commodity s and destination j, inflow - outflow
  // equals the rate.
  std::vector<std::vector<lp::Term>> balance(n);
  for (NodeId s = 0; s < n; ++s) {
    if (routable[s].empty()) continue;
    for (auto& terms : balance) terms.clear();
    for (ArcId a = 0; a < arcs.arc_count(); ++a) {
      const std::size_t v = var_of[s][a];
      if (v == npos) continue;
      balance[arcs.head[a]].push_back({v, 1.0});
      balance[arcs.tail[a]].push_back({v, -1.0});
    }
    for (NodeId j : routable[s]) {
      lp::Constraint row;
      row.sense = lp::Sense::equal;
      row.terms = balance[j];
      if (maximize_rate) {
        row.terms.push_back({0, -1.0});
        row.rhs = 0.0;
      } else {
        row.rhs = fixed_rate;
      }
      p.constraints.push_back(std::move(row));
    }
  }

  // Capacity per arc.
  std::vector<std::vector<lp::Term>> per_arc(arcs.arc_count());
  for (std::size_t v = fm.first_flow_var; v < next_var; ++v) {
    per_arc[fm.var_arc[v - fm.first_flow_var]].push_back({v, 1.0});
  }
  for (ArcId a = 0; a < arcs.arc_count(); ++a) {
    if (per_arc[a].empty()) continue;
    lp::Constraint row;
    row.sense = lp::Sense::less_equal;
    row.terms = std::move(per_arc[a]);
    row.rhs = capacity[a];
    p.constraints.push_back(std::move(row));
  }
  return fm;
}

void check_lp_size(const Graph& g) {
  if (g.active_node_count() > kLpMaxNodes) {
    throw ParameterError(fmt::format(
        "LP throughput model is limited to {} nodes (graph has {})", kLpMaxNodes,
        g.active_node_count()));
  }
}

}  // namespace

ConcurrentFlowSolution solve_concurrent_flow(const Graph& g,
                                             std::span<const double> capacity) {
  check_lp_size(g);
  const ArcTable arcs(g);
  const std::size_t n = g.node_count();
  if (capacity.size() != arcs.arc_count()) {
    throw ParameterError("solve_concurrent_flow: capacity size does not match arc count");
  }

  ConcurrentFlowSolution sol;
  sol.arcs = directed_arcs(g);
  sol.capacity.assign(capacity.begin(), capacity.end());
  sol.flow.assign(n, {});
  sol.routable.assign(n, {});

  std::vector<std::uint8_t> usable(arcs.arc_count());
  for (std::size_t a = 0; a < usable.size(); ++a) usable[a] = capacity[a] > kSaturated;

  BfsScratch scratch;
  bool any = false;
  for (NodeId s = 0; s < n; ++s) {
    if (!g.is_active(s)) continue;
    detail::bfs_tree(g, arcs, &usable, s, TieBreak::sequential(), 0, scratch);
    sol.routable[s].assign(scratch.order.begin() + 1, scratch.order.end());
    std::sort(sol.routable[s].begin(), sol.routable[s].end());
    any = any || !sol.routable[s].empty();
  }
  if (!any) return sol;

  FlowModel rate_model = build_flow_model(arcs, capacity, usable, sol.routable, -1.0);
  if (lp::tableau_size(rate_model.problem) > kMaxTableau) {
    throw ParameterError(fmt::format("LP too large: {} variables, {} constraints",
                                     rate_model.problem.num_vars,
                                     rate_model.problem.constraints.size()));
  }
  const lp::Solution best = lp::solve(rate_model.problem);
  if (best.status != lp::Status::optimal) {
    throw ComputeError("concurrent-flow LP did not reach an optimum");
  }
  sol.delta = best.x[0];

  const FlowModel* used_model = &rate_model;
  const std::vector<double>* used_x = &best.x;
  FlowModel cost_model;
  lp::Solution cheapest;
  if (sol.delta > kSaturated) {
    cost_model = build_flow_model(arcs, capacity, usable, sol.routable, sol.delta);
    cheapest = lp::solve(cost_model.problem);
    if (cheapest.status == lp::Status::optimal) {
      used_model = &cost_model;
      used_x = &cheapest.x;
    }
  }

  for (NodeId s = 0; s < n; ++s) {
    if (!sol.routable[s].empty()) sol.flow[s].assign(arcs.arc_count(), 0.0);
  }
  for (std::size_t v = used_model->first_flow_var; v < used_x->size(); ++v) {
    const std::size_t k = v - used_model->first_flow_var;
    sol.flow[used_model->var_source[k]][used_model->var_arc[k]] = (*used_x)[v];
  }
  return sol;
}

ThroughputResult throughput_lp(const Graph& g, const ThroughputModel&,
                               ThroughputDetail detail) {
  check_lp_size(g);
  ThroughputResult result;
  const bool per_pair = detail == ThroughputDetail::per_pair;
  const std::size_t n = g.node_count();
  const std::size_t m = 2 * g.edge_count();
  std::vector<double> capacity(m, 1.0);
  std::vector<double> utilization(m, 0.0);
  PairMatrix delivered(n, per_pair);

  double total = 0.0;
  // Each round disconnects at least one pair, so n^2 rounds always suffice.
  for (std::size_t round = 0; round <= n * n; ++round) {
    double left = 0.0;
    for (double c : capacity) left += c;
    if (left < kLpStop) break;

    const ConcurrentFlowSolution sol = solve_concurrent_flow(g, capacity);
    if (sol.delta < kLpStop) break;
    for (NodeId s = 0; s < n; ++s) {
      for (NodeId t : sol.routable[s]) {
        total += sol.delta;
        if (per_pair) delivered.add(s, t, sol.delta);
      }
    }
    for (std::size_t a = 0; a < m; ++a) {
      double used = 0.0;
      for (NodeId s = 0; s < n; ++s) {
        if (!sol.flow[s].empty()) used += sol.flow[s][a];
      }
      utilization[a] += used;
      capacity[a] = std::max(0.0, capacity[a] - used);
    }
  }

  result.raw_throughput = total;
  if (per_pair) {
    result.per_pair = delivered.collect();
    result.arc_utilization = std::move(utilization);
  }
  return result;
}

ThroughputResult throughput(const Graph& g, const ThroughputModel& model,
                            ThroughputDetail detail) {
  switch (model.kind) {
    case RoutingModel::dijkstra_homogeneous:
      return throughput_dijkstra_homogeneous(g, model, detail);
    case RoutingModel::dijkstra_heterogeneous:
      return throughput_dijkstra_heterogeneous(g, model, detail);
    case RoutingModel::lp_optimization:
      return throughput_lp(g, model, detail);
  }
  throw ParameterError("unknown throughput model");
}

ModelComparison compare_models(const Graph& g, const TieBreak& tie) {
  ModelComparison c;
  c.lp = throughput_lp(g, {RoutingModel::lp_optimization, tie},
                       ThroughputDetail::totals)
             .raw_throughput;
  c.heterogeneous = throughput_dijkstra_heterogeneous(
                        g, {RoutingModel::dijkstra_heterogeneous, tie},
                        ThroughputDetail::totals)
                        .raw_throughput;
  c.homogeneous = throughput_dijkstra_homogeneous(
                      g, {RoutingModel::dijkstra_homogeneous, tie},
                      ThroughputDetail::totals)
                      .raw_throughput;
  return c;
}

}  // namespace netelastic
