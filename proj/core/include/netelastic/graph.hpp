#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace netelastic {

using NodeId = std::uint32_t;

/// Unordered node pair, stored with `u < v`.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph over the id space 0..N-1.
///
/// Node ids are stable for the lifetime of the graph. Removing a node detaches
/// all of its edges and marks the id inert; the id space itself never shrinks,
/// so attack sequences and reports can keep referring to original labels.
/// Neighbor lists are kept sorted in ascending id order.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count);

  /// Builds a graph from an edge list. Throws ParameterError on self-loops,
  /// duplicate pairs (in either orientation) and out-of-range ids.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

  /// Adds the undirected edge {u, v}.
  void add_edge(NodeId u, NodeId v);
  void remove_edge(NodeId u, NodeId v);

  /// Detaches `v` and marks it removed. Throws ParameterError if `v` is out of
  /// range or already removed.
  void remove_node(NodeId v);

  /// Size of the id space, removed nodes included.
  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t active_node_count() const noexcept { return active_count_; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool is_active(NodeId v) const noexcept {
    return v < active_.size() && active_[v] != 0;
  }
  bool has_edge(NodeId u, NodeId v) const noexcept;

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return adjacency_[v];
  }
  std::size_t degree(NodeId v) const noexcept { return adjacency_[v].size(); }

  /// Active node ids in ascending order.
  std::vector<NodeId> active_nodes() const;
  /// All edges with `u < v`, sorted lexicographically.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_node(NodeId v, const char* what) const;

  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::uint8_t> active_;
  std::size_t active_count_ = 0;
  std::size_t edge_count_ = 0;
};

/// Parses the edge-list text format: one `u v` pair per line, `#` comments,
/// an optional `# nodes N` header declaring the id space. Throws ParseError
/// with the offending line number on malformed lines, self-loops and
/// duplicate edges.
Graph parse_edge_list(std::string_view text);
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

/// Writes `# nodes N` followed by one sorted `u v` line per edge.
void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list(const Graph& g);

/// Connected components of the active nodes, each sorted ascending and the
/// list ordered by smallest member.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);

/// Returns a copy of `g` with `v` removed.
Graph remove_node(Graph g, NodeId v);

/// Relabels node `v` to `perm[v]`; `perm` must be a permutation of 0..N-1.
Graph relabel(const Graph& g, std::span<const NodeId> perm);

}  // namespace netelastic
