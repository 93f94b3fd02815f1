#include "netelastic/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "netelastic/errors.hpp"
#include "netelastic/metrics.hpp"

namespace netelastic {

const char* to_string(AttackKind kind) noexcept {
  switch (kind) {
    case AttackKind::random:
      return "random";
    case AttackKind::highest_degree:
      return "highest_degree";
    case AttackKind::highest_betweenness:
      return "highest_betweenness";
  }
  return "unknown";
}

AttackKind parse_attack_kind(const std::string& name) {
  for (auto k : {AttackKind::random, AttackKind::highest_degree,
                 AttackKind::highest_betweenness}) {
    if (name == to_string(k)) return k;
  }
  throw ParameterError(fmt::format("unknown attack strategy '{}'", name));
}

void AttackStrategy::validate() const {
  if (batch < 1) throw ParameterError("attack batch size must be at least 1");
}

namespace {

std::vector<double> attack_scores(const Graph& g, AttackKind kind) {
  if (kind == AttackKind::highest_betweenness) return betweenness(g);
  std::vector<double> scores(g.node_count(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    scores[v] = static_cast<double>(g.degree(v));
  }
  return scores;
}

// Scores within this relative margin count as tied; ties go to the smaller id.
bool clearly_greater(double a, double b) {
  return a > b + 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Appends up to `count` of the highest-scoring candidates, in order.
void take_top(const std::vector<double>& scores, std::vector<std::uint8_t>& candidate,
              std::size_t count, std::vector<NodeId>& out) {
  for (std::size_t taken = 0; taken < count; ++taken) {
    NodeId best = kNoNode;
    for (NodeId v = 0; v < scores.size(); ++v) {
      if (!candidate[v]) continue;
      if (best == kNoNode || clearly_greater(scores[v], scores[best])) best = v;
    }
    if (best == kNoNode) return;
    candidate[best] = 0;
    out.push_back(best);
  }
}

}  // namespace

std::vector<NodeId> attack_sequence(const Graph& g, const AttackStrategy& strategy,
                                    std::optional<std::size_t> limit) {
  strategy.validate();
  const std::size_t total =
      std::min(limit.value_or(g.active_node_count()), g.active_node_count());
  std::vector<NodeId> order;
  order.reserve(total);

  if (strategy.kind == AttackKind::random) {
    order = g.active_nodes();
    std::mt19937_64 rng(strategy.seed);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(total);
    return order;
  }

  std::vector<std::uint8_t> candidate(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) candidate[v] = g.is_active(v);

  if (!strategy.recompute) {
    take_top(attack_scores(g, strategy.kind), candidate, total, order);
    return order;
  }

  Graph work = g;
  while (order.size() < total) {
    const std::size_t before = order.size();
    take_top(attack_scores(work, strategy.kind), candidate,
             std::min(strategy.batch, total - before), order);
    for (std::size_t i = before; i < order.size(); ++i) work.remove_node(order[i]);
  }
  return order;
}

double trapezoid_area(const std::vector<CurveSample>& samples) {
  double area = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double width = samples[i].fraction_removed - samples[i - 1].fraction_removed;
    area += 0.5 * width *
            (samples[i].normalized_throughput + samples[i - 1].normalized_throughput);
  }
  return area;
}

ElasticityCurve elasticity(const Graph& g, const AttackStrategy& strategy,
                           const ThroughputModel& model, double stop_fraction) {
  strategy.validate();
  if (!(stop_fraction > 0.0 && stop_fraction <= 1.0)) {
    throw ParameterError(fmt::format("stop fraction {} outside (0, 1]", stop_fraction));
  }
  const std::size_t n = g.active_node_count();
  if (n == 0) throw ComputeError("elasticity is undefined for an empty graph");

  ElasticityCurve curve;
  curve.alpha = throughput(g, model).raw_throughput;
  if (!(curve.alpha > 0.0)) {
    throw ComputeError("elasticity is undefined: intact graph has zero throughput");
  }

  const double nd = static_cast<double>(n);
  const auto removals = std::min(
      n, static_cast<std::size_t>(std::ceil(stop_fraction * nd - 1e-9)));
  curve.removed = attack_sequence(g, strategy, removals);

  curve.samples.push_back({0.0, 1.0});
  Graph work = g;
  std::size_t done = 0;
  while (done < removals) {
    const std::size_t end = std::min(removals, done + strategy.batch);
    for (; done < end; ++done) work.remove_node(curve.removed[done]);
    const double raw =
        work.edge_count() == 0 ? 0.0 : throughput(work, model).raw_throughput;
    curve.samples.push_back({static_cast<double>(done) / nd, raw / curve.alpha});
  }
  curve.elasticity = trapezoid_area(curve.samples);
  return curve;
}

namespace {

__extension__ typedef unsigned __int128 u128;

// sum_{j=1}^{m} j (j - 1)
u128 falling_square_sum(std::uint64_t m) {
  if (m < 2) return 0;
  const u128 x = m;
  return (x + 1) * x * (x - 1) / 3;
}

void check_mesh_args(std::uint64_t n, std::uint64_t zeta) {
  if (n < 2) throw ParameterError("mesh elasticity needs n >= 2");
  if (zeta < 1 || zeta > n) {
    throw ParameterError(fmt::format("zeta {} outside [1, {}]", zeta, n));
  }
}

}  // namespace

double mesh_throughput(std::uint64_t n, std::uint64_t k) {
  if (n < 2 || k > n) throw ParameterError("mesh_throughput: need n >= 2 and k <= n");
  if (k >= n - 1) return 0.0;
  const long double a = static_cast<long double>(n - k) * static_cast<long double>(n - k - 1);
  const long double b = static_cast<long double>(n) * static_cast<long double>(n - 1);
  return static_cast<double>(a / b);
}

double mesh_elasticity_discrete(std::uint64_t n, std::uint64_t zeta) {
  check_mesh_args(n, zeta);
  const long double nn = static_cast<long double>(n);
  const long double pairs = nn * (nn - 1.0L);
  // Interior samples k = 1 .. zeta-1 cover j = n-zeta+1 .. n-1 remaining nodes.
  const u128 interior = falling_square_sum(n - 1) - falling_square_sum(n - zeta);
  long double sum = 0.5L + static_cast<long double>(interior) / pairs;
  if (zeta < n) {
    const long double left = static_cast<long double>(n - zeta);
    sum += left * (left - 1.0L) / (2.0L * pairs);
  }
  return static_cast<double>(sum / nn);
}

double mesh_elasticity_continuous(std::uint64_t n, std::optional<std::uint64_t> zeta) {
  if (n < 2) throw ParameterError("mesh elasticity needs n >= 2");
  const long double nn = static_cast<long double>(n);
  if (!zeta || *zeta == n) {
    return static_cast<double>(1.0L / 3.0L - 1.0L / (6.0L * nn) -
                               1.0L / (6.0L * nn * nn));
  }
  check_mesh_args(n, *zeta);
  const long double z = static_cast<long double>(*zeta);
  const long double num =
      nn * (nn - 1.0L) * z + 0.5L * (1.0L - 2.0L * nn) * z * z + z * z * z / 3.0L;
  return static_cast<double>(num / (nn * nn * (nn - 1.0L)));
}

void TradeoffParams::validate() const {
  for (double w : {alpha_tol, beta_tol, delta_tol, gamma_tol}) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw ParameterError(fmt::format("tolerance {} outside [0, 1]", w));
    }
  }
}

double density_penalty(std::uint64_t n, std::uint64_t m) {
  if (n < 2) throw ParameterError("density penalty needs n >= 2");
  if (m + 1 <= n) return 0.0;
  const double excess = static_cast<double>(m - (n - 1));
  return 1.0 - std::exp(-0.5 * excess / static_cast<double>(n));
}

double tradeoff_re(double elas_r, double elas_d, double elas_b, std::uint64_t n,
                   std::uint64_t m, const TradeoffParams& params) {
  params.validate();
  if (n < 2) throw ParameterError("tradeoff needs n >= 2");
  for (double e : {elas_r, elas_d, elas_b}) {
    if (!(e >= 0.0 && std::isfinite(e))) {
      throw ParameterError(fmt::format("elasticity {} must be finite and nonnegative", e));
    }
  }
  return params.alpha_tol * elas_r + params.beta_tol * elas_d +
         params.delta_tol * elas_b - params.gamma_tol * density_penalty(n, m);
}

}  // namespace netelastic

namespace netelastic {

std::string curve_to_csv(const ElasticityCurve& curve, const AttackStrategy& strategy,
                         const ThroughputModel& model) {
  std::string out = "fraction_removed,normalized_throughput\n";
  for (const CurveSample& s : curve.samples) {
    out += fmt::format("{},{}\n", format_number(s.fraction_removed),
                       format_number(s.normalized_throughput));
  }
  out += fmt::format("# elasticity={} alpha={} strategy={} model={} seed={}\n",
                     format_number(curve.elasticity), format_number(curve.alpha),
                     to_string(strategy.kind), to_string(model.kind),
                     strategy.kind == AttackKind::random ? strategy.seed
                                                         : model.tie_break.seed);
  return out;
}

}  // namespace netelastic
