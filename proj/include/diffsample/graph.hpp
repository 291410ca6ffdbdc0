#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace diffsample {

// Dense node index in [0, node_count). External labels from ingested files
// are remapped onto this range; the remapping table lives with the loader.
using NodeId = std::uint32_t;

struct Edge {
  NodeId src{};
  NodeId dst{};

  friend constexpr bool operator==(const Edge&, const Edge&) = default;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

// Packs an edge into a single 64-bit key, handy for hash sets.
constexpr std::uint64_t edge_key(Edge e) {
  return static_cast<std::uint64_t>(e.src) << 32 | e.dst;
}

constexpr Edge edge_from_key(std::uint64_t key) {
  return Edge{static_cast<NodeId>(key >> 32), static_cast<NodeId>(key)};
}

// Immutable directed graph over dense node ids. Edges are stored sorted by
// (src, dst) and adjacency is CSR over that order, so neighbor lists are
// ordered and iteration is deterministic. Self-loops and parallel edges are
// rejected at construction; ingestion drops them beforehand and reports
// counts. Safe for shared concurrent reads once built.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(NodeId node_count, std::vector<Edge> edges) {
    for (const Edge& e : edges) {
      if (e.src >= node_count || e.dst >= node_count)
        throw std::invalid_argument("Graph: edge endpoint out of range");
      if (e.src == e.dst)
        throw std::invalid_argument("Graph: self-loops are not allowed");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw std::invalid_argument("Graph: duplicate edge");

    Graph g;
    g.node_count_ = node_count;
    g.edges_ = std::move(edges);
    g.build_adjacency();
    return g;
  }

  NodeId node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  // All edges, sorted by (src, dst).
  std::span<const Edge> edges() const { return edges_; }

  std::span<const NodeId> out_neighbors(NodeId u) const {
    return {out_targets_.data() + out_offsets_[u],
            out_targets_.data() + out_offsets_[u + 1]};
  }

  std::span<const NodeId> in_neighbors(NodeId u) const {
    return {in_sources_.data() + in_offsets_[u],
            in_sources_.data() + in_offsets_[u + 1]};
  }

  std::size_t out_degree(NodeId u) const {
    return out_offsets_[u + 1] - out_offsets_[u];
  }

  std::size_t in_degree(NodeId u) const {
    return in_offsets_[u + 1] - in_offsets_[u];
  }

 private:
  void build_adjacency() {
    const std::size_t n = node_count_;
    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(n + 1, 0);
    for (const Edge& e : edges_) {
      ++out_offsets_[e.src + 1];
      ++in_offsets_[e.dst + 1];
    }
    for (std::size_t u = 0; u < n; ++u) {
      out_offsets_[u + 1] += out_offsets_[u];
      in_offsets_[u + 1] += in_offsets_[u];
    }
    out_targets_.resize(edges_.size());
    in_sources_.resize(edges_.size());
    std::vector<std::uint64_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      out_targets_[i] = edges_[i].dst;  // edges_ is src-major, already in place
      in_sources_[cursor[edges_[i].dst]++] = edges_[i].src;
    }
  }

  NodeId node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> out_offsets_;
  std::vector<std::uint64_t> in_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<NodeId> in_sources_;
};

// Densification exponent a with m = n^a, i.e. ln(m)/ln(n) for one snapshot.
inline double densification_exponent(std::size_t nodes, std::size_t edges) {
  if (nodes < 2 || edges < 1)
    throw std::domain_error(
        "densification_exponent: needs at least 2 nodes and 1 edge");
  return std::log(static_cast<double>(edges)) / std::log(static_cast<double>(nodes));
}

inline double densification_exponent(const Graph& g) {
  return densification_exponent(g.node_count(), g.edge_count());
}

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::optional<double> densification;  // empty when undefined (n < 2 or m = 0)
};

inline GraphStats graph_stats(const Graph& g) {
  GraphStats stats{g.node_count(), g.edge_count(), std::nullopt};
  if (stats.nodes >= 2 && stats.edges >= 1)
    stats.densification = densification_exponent(stats.nodes, stats.edges);
  return stats;
}

}  // namespace diffsample
