#include "netelastic/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "netelastic/errors.hpp"

namespace netelastic {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse:
      return "parse";
    case ErrorKind::parameter:
      return "parameter";
    case ErrorKind::compute:
      return "compute";
    case ErrorKind::io:
      return "io";
  }
  return "unknown";
}

Graph::Graph(std::size_t node_count)
    : adjacency_(node_count), active_(node_count, 1), active_count_(node_count) {}

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  Graph g(node_count);
  for (const Edge& e : edges) {
    g.check_node(e.u, "edge endpoint");
    g.check_node(e.v, "edge endpoint");
    if (e.u == e.v) {
      throw ParameterError(fmt::format("self-loop on node {}", e.u));
    }
    g.adjacency_[e.u].push_back(e.v);
    g.adjacency_[e.v].push_back(e.u);
  }
  for (NodeId v = 0; v < node_count; ++v) {
    auto& adj = g.adjacency_[v];
    std::sort(adj.begin(), adj.end());
    auto dup = std::adjacent_find(adj.begin(), adj.end());
    if (dup != adj.end()) {
      throw ParameterError(fmt::format("duplicate edge {} {}", v, *dup));
    }
  }
  g.edge_count_ = edges.size();
  return g;
}

void Graph::check_node(NodeId v, const char* what) const {
  if (v >= adjacency_.size()) {
    throw ParameterError(
        fmt::format("{} {} out of range (N = {})", what, v, adjacency_.size()));
  }
  if (!active_[v]) {
    throw ParameterError(fmt::format("{} {} has been removed", what, v));
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  if (u >= adjacency_.size() || v >= adjacency_.size()) return false;
  const auto& adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

void Graph::add_edge(NodeId u, NodeId v) {
  check_node(u, "node");
  check_node(v, "node");
  if (u == v) throw ParameterError(fmt::format("self-loop on node {}", u));
  auto& au = adjacency_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) {
    throw ParameterError(fmt::format("duplicate edge {} {}", u, v));
  }
  au.insert(it, v);
  auto& av = adjacency_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edge_count_;
}

void Graph::remove_edge(NodeId u, NodeId v) {
  auto erase_one = [](std::vector<NodeId>& adj, NodeId x) {
    auto it = std::lower_bound(adj.begin(), adj.end(), x);
    if (it == adj.end() || *it != x) return false;
    adj.erase(it);
    return true;
  };
  if (u >= adjacency_.size() || v >= adjacency_.size() ||
      !erase_one(adjacency_[u], v)) {
    throw ParameterError(fmt::format("no edge {} {}", u, v));
  }
  erase_one(adjacency_[v], u);
  --edge_count_;
}

void Graph::remove_node(NodeId v) {
  check_node(v, "node");
  for (NodeId w : adjacency_[v]) {
    auto& adj = adjacency_[w];
    adj.erase(std::lower_bound(adj.begin(), adj.end(), v));
  }
  edge_count_ -= adjacency_[v].size();
  adjacency_[v].clear();
  adjacency_[v].shrink_to_fit();
  active_[v] = 0;
  --active_count_;
}

std::vector<NodeId> Graph::active_nodes() const {
  std::vector<NodeId> out;
  out.reserve(active_count_);
  for (NodeId v = 0; v < active_.size(); ++v) {
    if (active_[v]) out.push_back(v);
  }
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) tokens.push_back(s.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool parse_id(std::string_view token, std::uint64_t& out) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  constexpr std::uint64_t kMaxId = 0xFFFFFFFEull;
  std::vector<Edge> edges;
  std::uint64_t declared = 0;
  bool has_declared = false;
  std::uint64_t max_id_plus_one = 0;
  std::vector<std::size_t> line_of_edge;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    if (line.front() == '#') {
      const auto tokens = split_ws(trim(line.substr(1)));
      if (tokens.size() == 2 && tokens[0] == "nodes") {
        if (has_declared) {
          throw ParseError(
              fmt::format("line {}: repeated '# nodes' header", line_no));
        }
        if (!parse_id(tokens[1], declared) || declared > kMaxId + 1) {
          throw ParseError(
              fmt::format("line {}: invalid node count '{}'", line_no, tokens[1]));
        }
        has_declared = true;
      }
      continue;
    }
    const auto tokens = split_ws(line);
    if (tokens.size() != 2) {
      throw ParseError(fmt::format(
          "line {}: expected two node ids, got {} tokens", line_no, tokens.size()));
    }
    std::uint64_t u = 0, v = 0;
    if (!parse_id(tokens[0], u) || !parse_id(tokens[1], v) || u > kMaxId ||
        v > kMaxId) {
      throw ParseError(fmt::format("line {}: invalid node id in '{}'", line_no,
                                   std::string(line)));
    }
    if (u == v) {
      throw ParseError(fmt::format("line {}: self-loop on node {}", line_no, u));
    }
    if (u > v) std::swap(u, v);
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    line_of_edge.push_back(line_no);
    max_id_plus_one = std::max(max_id_plus_one, v + 1);
    if (nl == text.size()) break;
  }

  if (has_declared && declared < max_id_plus_one) {
    throw ParseError(fmt::format("declared {} nodes but ids reach {}", declared,
                                 max_id_plus_one - 1));
  }
  const std::size_t n = has_declared ? declared : max_id_plus_one;

  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (edges[order[i]] == edges[order[i - 1]]) {
      const auto& e = edges[order[i]];
      throw ParseError(fmt::format("line {}: duplicate edge {} {} (first on line {})",
                                   line_of_edge[order[i]], e.u, e.v,
                                   line_of_edge[order[i - 1]]));
    }
  }
  return Graph::from_edges(n, edges);
}

Graph load_edge_list(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading edge list");
  return parse_edge_list(buffer.str());
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open edge list '{}'", path));
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::vector<NodeId>> components;
  std::deque<NodeId> queue;
  for (NodeId s = 0; s < n; ++s) {
    if (!g.is_active(s) || seen[s]) continue;
    std::vector<NodeId> comp{s};
    seen[s] = 1;
    queue.push_back(s);
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (NodeId w : g.neighbors(u)) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
          queue.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

Graph remove_node(Graph g, NodeId v) {
  g.remove_node(v);
  return g;
}

Graph relabel(const Graph& g, std::span<const NodeId> perm) {
  const std::size_t n = g.node_count();
  if (perm.size() != n) throw ParameterError("relabel: permutation size mismatch");
  std::vector<std::uint8_t> hit(n, 0);
  for (NodeId p : perm) {
    if (p >= n || hit[p]) throw ParameterError("relabel: not a permutation");
    hit[p] = 1;
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    NodeId a = perm[e.u], b = perm[e.v];
    if (a > b) std::swap(a, b);
    edges.push_back({a, b});
  }
  Graph out = Graph::from_edges(n, edges);
  for (NodeId v = 0; v < n; ++v) {
    if (!g.is_active(v)) out.remove_node(perm[v]);
  }
  return out;
}

}  // namespace netelastic
