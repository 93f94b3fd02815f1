#pragma once

// Test-only reference computations, independent of the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "netelastic/graph.hpp"

namespace netelastic::testing {

/// Betweenness by enumerating every shortest path of every unordered pair
/// explicitly (DFS over the distance layers from a Floyd-Warshall matrix).
inline std::vector<double> brute_force_betweenness(const Graph& g) {
  const std::size_t n = g.node_count();
  constexpr int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (NodeId u = 0; u < n; ++u) {
    d[u][u] = 0;
    for (NodeId w : g.neighbors(u)) d[u][w] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);

  std::vector<double> score(n, 0.0);
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = s + 1; t < n; ++t) {
      if (!g.is_active(s) || !g.is_active(t) || d[s][t] >= inf) continue;
      std::vector<std::vector<NodeId>> paths;
      std::vector<NodeId> path{s};
      std::function<void(NodeId)> walk = [&](NodeId u) {
        if (u == t) {
          paths.push_back(path);
          return;
        }
        for (NodeId w : g.neighbors(u)) {
          if (d[s][w] == d[s][u] + 1 && d[w][t] == d[u][t] - 1) {
            path.push_back(w);
            walk(w);
            path.pop_back();
          }
        }
      };
      walk(s);
      for (const auto& p : paths) {
        for (std::size_t i = 1; i + 1 < p.size(); ++i) {
          score[p[i]] += 1.0 / static_cast<double>(paths.size());
        }
      }
    }
  }
  return score;
}

/// Normalized mesh throughput after k removals, straight from the pair count.
inline double mesh_throughput_oracle(std::uint64_t n, std::uint64_t k) {
  const double left = static_cast<double>(n - k);
  return left * std::max(0.0, left - 1.0) /
         (static_cast<double>(n) * static_cast<double>(n - 1));
}

/// Trapezoid sum over the mesh throughput samples k = 0..zeta.
inline double mesh_trapezoid_oracle(std::uint64_t n, std::uint64_t zeta) {
  double area = 0.0;
  for (std::uint64_t k = 0; k < zeta; ++k) {
    area += 0.5 * (mesh_throughput_oracle(n, k) + mesh_throughput_oracle(n, k + 1)) /
            static_cast<double>(n);
  }
  return area;
}

/// Random connected graph: a random recursive tree plus extra edges with
/// probability `extra`.
inline Graph random_connected_graph(std::size_t n, double extra, std::mt19937_64& rng) {
  Graph g(n);
  for (NodeId v = 1; v < n; ++v) {
    g.add_edge(std::uniform_int_distribution<NodeId>(0, v - 1)(rng), v);
  }
  std::bernoulli_distribution coin(extra);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v) && coin(rng)) g.add_edge(u, v);
  return g;
}

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (NodeId v = 1; v < n; ++v) g.add_edge(v - 1, v);
  return g;
}

inline Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  g.add_edge(0, static_cast<NodeId>(n - 1));
  return g;
}

/// Star with center 0 and `leaves` leaves.
inline Graph star_graph(std::size_t leaves) {
  Graph g(leaves + 1);
  for (NodeId v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

/// Three small reference networks of clearly different robustness:
/// 1 = K8 without edge {0,1}, 2 = wheel (hub 0, rim 1..7), 3 = star.
inline Graph test_network(int which) {
  Graph g(8);
  switch (which) {
    case 1:
      for (NodeId u = 0; u < 8; ++u)
        for (NodeId v = u + 1; v < 8; ++v)
          if (u != 0 || v != 1) g.add_edge(u, v);
      break;
    case 2:
      for (NodeId v = 1; v < 8; ++v) {
        g.add_edge(0, v);
        g.add_edge(v, v % 7 + 1);
      }
      break;
    default:
      for (NodeId v = 1; v < 8; ++v) g.add_edge(0, v);
      break;
  }
  return g;
}

}  // namespace netelastic::testing
