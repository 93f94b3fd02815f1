#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "netelastic/graph.hpp"

namespace netelastic {

/// Structural summary of a graph. Node and link counts refer to active
/// nodes; diameter and average shortest path are measured on the largest
/// connected component (the one with the smallest member id on ties).
struct MetricsReport {
  std::size_t nodes = 0;
  std::size_t links = 0;
  double density = 0.0;
  std::size_t diameter = 0;
  double asp = 0.0;
  /// Population standard deviation of degree divided by mean degree.
  double heterogeneity = 0.0;
  std::size_t largest_component = 0;
  std::map<std::size_t, std::size_t> degree_histogram;
  std::vector<double> betweenness_values;
};

/// Throws ParameterError when fewer than two nodes are active.
MetricsReport metrics(const Graph& g, bool with_betweenness = true);

/// Shortest-path betweenness over unordered pairs, endpoints excluded, with
/// credit split evenly across equal-length shortest paths. Removed nodes
/// score 0.
std::vector<double> betweenness(const Graph& g);

inline constexpr const char* kMetricsCsvHeader =
    "name,nodes,links,density,diameter,asp,heterogeneity";

/// One CSV row matching kMetricsCsvHeader.
std::string metrics_csv_row(const std::string& name, const MetricsReport& m);

/// Decimal rendering with 7 significant digits; NaN renders as `NaN`.
std::string format_number(double value);

}  // namespace netelastic
