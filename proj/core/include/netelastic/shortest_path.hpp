#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "netelastic/graph.hpp"

namespace netelastic {

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class TieBreakKind { sequential, random };

/// How a shortest-path tree picks among equal-length predecessors.
/// `sequential` keeps the smallest-id candidate; `random` picks uniformly with
/// an RNG stream derived from `seed` and the source node.
struct TieBreak {
  TieBreakKind kind = TieBreakKind::sequential;
  std::uint64_t seed = 0;

  static TieBreak sequential() { return {}; }
  static TieBreak random(std::uint64_t seed) { return {TieBreakKind::random, seed}; }

  friend bool operator==(const TieBreak&, const TieBreak&) = default;
};

/// Single-predecessor hop-count shortest-path tree.
struct ShortestPathTree {
  NodeId source = kNoNode;
  std::vector<std::uint32_t> distance;  // kUnreachable when not reached
  std::vector<NodeId> predecessor;      // kNoNode for the source and unreached
  std::vector<NodeId> order;            // reached nodes by nondecreasing distance
};

ShortestPathTree shortest_path_tree(const Graph& g, NodeId source,
                                    const TieBreak& tie = TieBreak::sequential());

}  // namespace netelastic
