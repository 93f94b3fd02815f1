#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "netelastic/graph.hpp"

namespace netelastic {

enum class GeneratorFamily { gilbert, watts_strogatz, preferential_attachment, near_regular, mesh };

const char* to_string(GeneratorFamily family) noexcept;
/// Throws ParameterError on an unknown name.
GeneratorFamily parse_generator_family(const std::string& name);

/// Parameters for one synthetic topology. Fields irrelevant to `family` are
/// ignored.
struct GeneratorSpec {
  GeneratorFamily family = GeneratorFamily::mesh;
  std::size_t n = 0;
  double p = 0.0;         // gilbert edge probability / watts_strogatz rewiring
  std::size_t k = 0;      // watts_strogatz ring degree (even)
  std::size_t m = 0;      // preferential_attachment links per arrival
  std::size_t rows = 0;   // near_regular grid
  std::size_t cols = 0;
  bool diagonals = false;
  std::uint64_t seed = 0;

  /// Throws ParameterError when the fields violate the family's constraints.
  void validate() const;
};

Graph generate(const GeneratorSpec& spec);

/// G(n, p): every unordered pair independently with probability p.
Graph gen_gilbert(std::size_t n, double p, std::uint64_t seed);

/// Ring lattice with k/2 neighbours on each side, then each lattice edge has
/// its far endpoint rewired with probability p. Rewires that would create a
/// self-loop or duplicate are redrawn up to n times before the edge is kept,
/// so the edge count is always n*k/2.
Graph gen_watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed);

/// Barabasi-Albert growth from an (m+1)-clique; each arrival links to m
/// distinct existing nodes chosen proportionally to degree.
Graph gen_preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed);

/// rows x cols grid with unit links, plus both diagonals of every cell when
/// `diagonals` is set. Node (r, c) has id r * cols + c.
Graph gen_near_regular(std::size_t rows, std::size_t cols, bool diagonals);

/// Complete graph K_n.
Graph gen_mesh(std::size_t n);

}  // namespace netelastic
