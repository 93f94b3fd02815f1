#pragma once

// Arc-indexed view of a graph and the BFS kernel shared by the metrics and
// throughput code.

#include <cstdint>
#include <random>
#include <vector>

#include "netelastic/graph.hpp"
#include "netelastic/shortest_path.hpp"

namespace netelastic::detail {

using ArcId = std::uint32_t;
inline constexpr ArcId kNoArc = std::numeric_limits<ArcId>::max();

/// CSR layout of the directed arcs of a graph: the arcs leaving `u` are
/// `offset[u] .. offset[u+1]`, ordered by head id.
struct ArcTable {
  std::vector<std::uint32_t> offset;
  std::vector<NodeId> head;
  std::vector<NodeId> tail;

  explicit ArcTable(const Graph& g);

  std::size_t node_count() const { return offset.size() - 1; }
  std::size_t arc_count() const { return head.size(); }
  ArcId find(NodeId u, NodeId v) const;
};

/// Adjacency bit matrix used to speed up BFS on dense graphs.
class DenseAdjacency {
 public:
  DenseAdjacency(const Graph& g);
  bool test(NodeId u, NodeId v) const {
    return (bits_[u * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }
  static bool worthwhile(const Graph& g);

 private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

struct BfsScratch {
  std::vector<std::uint32_t> distance;
  std::vector<NodeId> predecessor;
  std::vector<ArcId> pred_arc;
  std::vector<NodeId> order;
  std::vector<std::uint32_t> candidates;
  std::vector<NodeId> frontier;
  std::vector<NodeId> next;
  std::vector<NodeId> unvisited;
};

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// Level-synchronous BFS from `source` over arcs whose `usable` flag is set
/// (all arcs when `usable` is null). Frontiers are scanned in ascending id
/// order so the sequential rule keeps the smallest-id predecessor; the random
/// rule reservoir-samples among all equal-distance predecessors. `dense`
/// enables the unvisited-list scan and is only honoured for the sequential
/// rule without an arc mask.
void bfs_tree(const Graph& g, const ArcTable& arcs,
              const std::vector<std::uint8_t>* usable, NodeId source,
              const TieBreak& tie, std::uint64_t stream, BfsScratch& scratch,
              const DenseAdjacency* dense = nullptr);

}  // namespace netelastic::detail
