#include "netelastic/generators.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>
#include <vector>

#include <fmt/format.h>

#include "netelastic/errors.hpp"

namespace netelastic {

const char* to_string(GeneratorFamily family) noexcept {
  switch (family) {
    case GeneratorFamily::gilbert:
      return "gilbert";
    case GeneratorFamily::watts_strogatz:
      return "watts_strogatz";
    case GeneratorFamily::preferential_attachment:
      return "preferential_attachment";
    case GeneratorFamily::near_regular:
      return "near_regular";
    case GeneratorFamily::mesh:
      return "mesh";
  }
  return "unknown";
}

GeneratorFamily parse_generator_family(const std::string& name) {
  for (auto f : {GeneratorFamily::gilbert, GeneratorFamily::watts_strogatz,
                 GeneratorFamily::preferential_attachment,
                 GeneratorFamily::near_regular, GeneratorFamily::mesh}) {
    if (name == to_string(f)) return f;
  }
  throw ParameterError(fmt::format("unknown generator family '{}'", name));
}

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError(fmt::format("probability {} outside [0, 1]", p));
  }
}

std::uint64_t pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

void GeneratorSpec::validate() const {
  switch (family) {
    case GeneratorFamily::gilbert:
      if (n < 2) throw ParameterError("gilbert: n must be at least 2");
      check_probability(p);
      break;
    case GeneratorFamily::watts_strogatz:
      check_probability(p);
      if (k < 2 || k % 2 != 0) throw ParameterError("watts_strogatz: k must be even and >= 2");
      if (k >= n) throw ParameterError("watts_strogatz: k must be smaller than n");
      break;
    case GeneratorFamily::preferential_attachment:
      if (m < 1 || m >= n) throw ParameterError("preferential_attachment: need n > m >= 1");
      break;
    case GeneratorFamily::near_regular:
      if (rows < 2 || cols < 2) throw ParameterError("near_regular: rows and cols must be >= 2");
      if (n != 0 && n != rows * cols) {
        throw ParameterError("near_regular: n must equal rows * cols");
      }
      break;
    case GeneratorFamily::mesh:
      if (n < 2) throw ParameterError("mesh: n must be at least 2");
      break;
  }
}

Graph generate(const GeneratorSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case GeneratorFamily::gilbert:
      return gen_gilbert(spec.n, spec.p, spec.seed);
    case GeneratorFamily::watts_strogatz:
      return gen_watts_strogatz(spec.n, spec.k, spec.p, spec.seed);
    case GeneratorFamily::preferential_attachment:
      return gen_preferential_attachment(spec.n, spec.m, spec.seed);
    case GeneratorFamily::near_regular:
      return gen_near_regular(spec.rows, spec.cols, spec.diagonals);
    case GeneratorFamily::mesh:
      return gen_mesh(spec.n);
  }
  throw ParameterError("unknown generator family");
}

Graph gen_gilbert(std::size_t n, double p, std::uint64_t seed) {
  if (n < 2) throw ParameterError("gilbert: n must be at least 2");
  check_probability(p);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({u, v});
    }
  }
  return Graph::from_edges(n, edges);
}

Graph gen_watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  check_probability(p);
  if (k < 2 || k % 2 != 0) throw ParameterError("watts_strogatz: k must be even and >= 2");
  if (k >= n) throw ParameterError("watts_strogatz: k must be smaller than n");

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));

  // Lattice edges in rewiring order: by offset j, then by node i.
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> present;
  edges.reserve(n * k / 2);
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto u = static_cast<NodeId>(i);
      const auto v = static_cast<NodeId>((i + j) % n);
      edges.push_back({u, v});
      present.insert(pair_key(u, v));
    }
  }
  for (Edge& e : edges) {
    if (!coin(rng)) continue;
    for (std::size_t attempt = 0; attempt < n; ++attempt) {
      const NodeId w = pick(rng);
      if (w == e.u || present.count(pair_key(e.u, w))) continue;
      present.erase(pair_key(e.u, e.v));
      present.insert(pair_key(e.u, w));
      e.v = w;
      break;
    }
  }
  for (Edge& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  return Graph::from_edges(n, edges);
}

Graph gen_preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || m >= n) throw ParameterError("preferential_attachment: need n > m >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  // Every edge endpoint appears once, so uniform draws are degree-weighted.
  std::vector<NodeId> endpoints;
  for (NodeId u = 0; u <= m; ++u) {
    for (NodeId v = u + 1; v <= m; ++v) {
      edges.push_back({u, v});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<NodeId> chosen;
  for (auto v = static_cast<NodeId>(m + 1); v < n; ++v) {
    chosen.clear();
    std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
    while (chosen.size() < m) {
      const NodeId t = endpoints[pick(rng)];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
    }
    for (NodeId t : chosen) {
      edges.push_back({t, v});
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph gen_near_regular(std::size_t rows, std::size_t cols, bool diagonals) {
  if (rows < 2 || cols < 2) throw ParameterError("near_regular: rows and cols must be >= 2");
  auto id = [cols](std::size_t r, std::size_t c) {
    return static_cast<NodeId>(r * cols + c);
  };
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c)});
      if (diagonals && r + 1 < rows) {
        if (c + 1 < cols) edges.push_back({id(r, c), id(r + 1, c + 1)});
        if (c > 0) edges.push_back({id(r, c), id(r + 1, c - 1)});
      }
    }
  }
  return Graph::from_edges(rows * cols, edges);
}

Graph gen_mesh(std::size_t n) {
  if (n < 2) throw ParameterError("mesh: n must be at least 2");
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph::from_edges(n, edges);
}

}  // namespace netelastic
