#include "netelastic/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <fmt/format.h>

#include "netelastic/errors.hpp"
#include "netelastic/shortest_path.hpp"
#include "routing.hpp"

namespace netelastic {

std::string format_number(double value) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  return fmt::format("{:.7g}", value);
}

std::vector<double> betweenness(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> score(n, 0.0);
  std::vector<std::uint32_t> dist(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<NodeId> order;
  order.reserve(n);

  for (NodeId s = 0; s < n; ++s) {
    if (!g.is_active(s) || g.degree(s) == 0) continue;
    std::fill(dist.begin(), dist.end(), kUnreachable);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId u = order[head];
      for (NodeId w : g.neighbors(u)) {
        if (dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[u] + 1) sigma[w] += sigma[u];
      }
    }
    for (NodeId v : order) delta[v] = 0.0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (NodeId v : g.neighbors(w)) {
        if (dist[v] + 1 == dist[w]) {
          delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
      }
      if (w != s) score[w] += delta[w];
    }
  }
  // Each unordered pair was counted from both endpoints.
  for (double& x : score) x *= 0.5;
  return score;
}

MetricsReport metrics(const Graph& g, bool with_betweenness) {
  MetricsReport r;
  r.nodes = g.active_node_count();
  if (r.nodes < 2) {
    throw ParameterError("metrics are undefined for graphs with fewer than 2 nodes");
  }
  r.links = g.edge_count();
  const double nn = static_cast<double>(r.nodes);
  r.density = 2.0 * static_cast<double>(r.links) / (nn * (nn - 1.0));

  double sum = 0.0, sum_sq = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!g.is_active(v)) continue;
    const double d = static_cast<double>(g.degree(v));
    ++r.degree_histogram[g.degree(v)];
    sum += d;
    sum_sq += d * d;
  }
  const double mean = sum / nn;
  const double var = std::max(0.0, sum_sq / nn - mean * mean);
  r.heterogeneity = mean > 0.0 ? std::sqrt(var) / mean : 0.0;
  // Round-off can leave a tiny residue on regular graphs.
  if (r.degree_histogram.size() == 1) r.heterogeneity = 0.0;

  const auto components = connected_components(g);
  const std::vector<NodeId>* largest = &components.front();
  for (const auto& c : components) {
    if (c.size() > largest->size()) largest = &c;
  }
  r.largest_component = largest->size();
  if (largest->size() >= 2) {
    const detail::ArcTable arcs(g);
    std::unique_ptr<detail::DenseAdjacency> dense;
    if (detail::DenseAdjacency::worthwhile(g)) {
      dense = std::make_unique<detail::DenseAdjacency>(g);
    }
    detail::BfsScratch scratch;
    std::uint64_t total = 0;
    std::uint32_t diameter = 0;
    for (NodeId s : *largest) {
      detail::bfs_tree(g, arcs, nullptr, s, TieBreak::sequential(), 0, scratch,
                       dense.get());
      for (NodeId v : scratch.order) {
        total += scratch.distance[v];
        diameter = std::max(diameter, scratch.distance[v]);
      }
    }
    const double c = static_cast<double>(largest->size());
    r.diameter = diameter;
    r.asp = static_cast<double>(total) / (c * (c - 1.0));
  }

  if (with_betweenness) r.betweenness_values = betweenness(g);
  return r;
}

std::string metrics_csv_row(const std::string& name, const MetricsReport& m) {
  return fmt::format("{},{},{},{},{},{},{}", name, m.nodes, m.links,
                     format_number(m.density), m.diameter, format_number(m.asp),
                     format_number(m.heterogeneity));
}

}  // namespace netelastic
