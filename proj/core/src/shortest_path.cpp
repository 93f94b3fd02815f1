#include "netelastic/shortest_path.hpp"

#include <algorithm>

#include "netelastic/errors.hpp"
#include "routing.hpp"

namespace netelastic {

namespace detail {

ArcTable::ArcTable(const Graph& g) {
  const std::size_t n = g.node_count();
  offset.assign(n + 1, 0);
  head.reserve(2 * g.edge_count());
  tail.reserve(2 * g.edge_count());
  for (NodeId u = 0; u < n; ++u) {
    offset[u] = static_cast<std::uint32_t>(head.size());
    for (NodeId w : g.neighbors(u)) {
      head.push_back(w);
      tail.push_back(u);
    }
  }
  offset[n] = static_cast<std::uint32_t>(head.size());
}

ArcId ArcTable::find(NodeId u, NodeId v) const {
  auto first = head.begin() + offset[u];
  auto last = head.begin() + offset[u + 1];
  auto it = std::lower_bound(first, last, v);
  if (it == last || *it != v) return kNoArc;
  return static_cast<ArcId>(it - head.begin());
}

DenseAdjacency::DenseAdjacency(const Graph& g)
    : words_((g.node_count() + 63) / 64), bits_(g.node_count() * words_, 0) {
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.neighbors(u)) bits_[u * words_ + (v >> 6)] |= 1ull << (v & 63);
  }
}

bool DenseAdjacency::worthwhile(const Graph& g) {
  const double n = static_cast<double>(g.active_node_count());
  if (n < 64 || g.node_count() > 16384) return false;
  return 2.0 * static_cast<double>(g.edge_count()) >= 0.25 * n * n;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over a combined state.
  std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void bfs_tree(const Graph& g, const ArcTable& arcs,
              const std::vector<std::uint8_t>* usable, NodeId source,
              const TieBreak& tie, std::uint64_t stream, BfsScratch& s,
              const DenseAdjacency* dense) {
  const std::size_t n = arcs.node_count();
  s.distance.assign(n, kUnreachable);
  s.predecessor.assign(n, kNoNode);
  s.pred_arc.assign(n, kNoArc);
  s.order.clear();
  s.frontier.clear();
  s.next.clear();

  s.distance[source] = 0;
  s.order.push_back(source);
  s.frontier.push_back(source);

  const bool random = tie.kind == TieBreakKind::random;
  if (!random && usable == nullptr && dense != nullptr) {
    s.unvisited.clear();
    for (NodeId v = 0; v < n; ++v) {
      if (v != source && g.is_active(v)) s.unvisited.push_back(v);
    }
    std::uint32_t level = 0;
    while (!s.frontier.empty() && !s.unvisited.empty()) {
      s.next.clear();
      for (NodeId u : s.frontier) {
        std::size_t keep = 0;
        for (NodeId w : s.unvisited) {
          if (dense->test(u, w)) {
            s.distance[w] = level + 1;
            s.predecessor[w] = u;
            s.pred_arc[w] = arcs.find(u, w);
            s.next.push_back(w);
          } else {
            s.unvisited[keep++] = w;
          }
        }
        s.unvisited.resize(keep);
        if (keep == 0) break;
      }
      std::sort(s.next.begin(), s.next.end());
      s.order.insert(s.order.end(), s.next.begin(), s.next.end());
      s.frontier.swap(s.next);
      ++level;
    }
    return;
  }

  std::mt19937_64 rng;
  if (random) {
    rng.seed(mix_seed(mix_seed(tie.seed, source), stream));
    s.candidates.assign(n, 0);
    s.candidates[source] = 1;
  }

  std::uint32_t level = 0;
  while (!s.frontier.empty()) {
    s.next.clear();
    for (NodeId u : s.frontier) {
      for (ArcId a = arcs.offset[u]; a < arcs.offset[u + 1]; ++a) {
        if (usable != nullptr && !(*usable)[a]) continue;
        const NodeId w = arcs.head[a];
        if (s.distance[w] == kUnreachable) {
          s.distance[w] = level + 1;
          s.predecessor[w] = u;
          s.pred_arc[w] = a;
          s.next.push_back(w);
          if (random) s.candidates[w] = 1;
        } else if (random && s.distance[w] == level + 1) {
          const std::uint32_t count = ++s.candidates[w];
          if (std::uniform_int_distribution<std::uint32_t>(0, count - 1)(rng) == 0) {
            s.predecessor[w] = u;
            s.pred_arc[w] = a;
          }
        }
      }
    }
    std::sort(s.next.begin(), s.next.end());
    s.order.insert(s.order.end(), s.next.begin(), s.next.end());
    s.frontier.swap(s.next);
    ++level;
  }
}

}  // namespace detail

ShortestPathTree shortest_path_tree(const Graph& g, NodeId source,
                                    const TieBreak& tie) {
  if (!g.is_active(source)) {
    throw ParameterError("shortest_path_tree: source is not an active node");
  }
  const detail::ArcTable arcs(g);
  detail::BfsScratch scratch;
  detail::bfs_tree(g, arcs, nullptr, source, tie, 0, scratch);
  ShortestPathTree tree;
  tree.source = source;
  tree.distance = std::move(scratch.distance);
  tree.predecessor = std::move(scratch.predecessor);
  tree.order = std::move(scratch.order);
  return tree;
}

}  // namespace netelastic
