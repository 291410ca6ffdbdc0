#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "diffsample/errors.hpp"
#include "diffsample/graph.hpp"
#include "diffsample/rng.hpp"

namespace diffsample {

// Stochastic Kronecker generation from a 2x2 initiator matrix: every edge is
// placed by `levels` probabilistic descents through the matrix, giving
// 2^levels nodes. Exactly `target_edges` distinct edges are placed; self-loops
// and duplicates are redrawn, so fixed edge counts are reproduced exactly.
struct KroneckerParams {
  std::array<double, 4> initiator{};  // row-major [p00, p01, p10, p11]
  unsigned levels = 1;
  std::size_t target_edges = 0;
  std::size_t max_draw_factor = 1000;  // draw cap = factor * target_edges

  void validate() const {
    for (double p : initiator)
      if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("KroneckerParams: matrix entries must be in [0,1]");
    if (levels == 0 || levels > 31)
      throw std::invalid_argument("KroneckerParams: levels must be in [1,31]");
    double total = initiator[0] + initiator[1] + initiator[2] + initiator[3];
    if (total <= 0.0)
      throw std::invalid_argument("KroneckerParams: matrix must have positive mass");
    std::uint64_t n = std::uint64_t{1} << levels;
    if (target_edges == 0 || target_edges > n * (n - 1))
      throw std::invalid_argument("KroneckerParams: unreachable target edge count");
  }
};

inline Graph kronecker_generate(const KroneckerParams& params, Rng& rng) {
  params.validate();
  const NodeId n = static_cast<NodeId>(std::uint64_t{1} << params.levels);
  const double total = params.initiator[0] + params.initiator[1] +
                       params.initiator[2] + params.initiator[3];
  std::array<double, 4> cumulative{};
  double acc = 0.0;
  for (int q = 0; q < 4; ++q) {
    acc += params.initiator[q] / total;
    cumulative[q] = acc;
  }
  cumulative[3] = 1.0;

  std::unordered_set<std::uint64_t> placed;
  placed.reserve(params.target_edges * 2);
  std::vector<Edge> edges;
  edges.reserve(params.target_edges);

  const std::uint64_t draw_cap = params.max_draw_factor * params.target_edges;
  std::uint64_t draws = 0;
  while (edges.size() < params.target_edges) {
    if (draws >= draw_cap)
      throw GenerationError("kronecker_generate: draw cap hit at " +
                            std::to_string(edges.size()) + " of " +
                            std::to_string(params.target_edges) + " edges");
    ++draws;
    NodeId src = 0;
    NodeId dst = 0;
    for (unsigned level = 0; level < params.levels; ++level) {
      double u = rng.uniform_double();
      int q = 0;
      while (q < 3 && u >= cumulative[q]) ++q;
      src = static_cast<NodeId>(src << 1 | static_cast<NodeId>(q >> 1));
      dst = static_cast<NodeId>(dst << 1 | static_cast<NodeId>(q & 1));
    }
    if (src == dst) continue;
    if (!placed.insert(edge_key(Edge{src, dst})).second) continue;
    edges.push_back(Edge{src, dst});
  }
  return Graph::from_edges(n, std::move(edges));
}

// Forest Fire growth. Each new node links to `ambassadors` uniformly chosen
// existing nodes and burns outward from them: a burning node ignites x of its
// unburned out-neighbors and y unburned in-neighbors, with x geometric of
// mean p/(1-p) for p = forward_prob and y geometric of mean q/(1-q) for
// q = backward_ratio * forward_prob. The new node links to every burned node.
struct ForestFireParams {
  double forward_prob = 0.0;
  double backward_ratio = 0.0;
  unsigned ambassadors = 1;
  NodeId target_nodes = 1;
  std::size_t start_cycle = 1;     // >= 2 seeds growth with a directed cycle
  std::size_t expected_edges = 0;  // advisory, used only for reporting

  void validate() const {
    if (!(forward_prob >= 0.0 && forward_prob < 1.0))
      throw std::invalid_argument("ForestFireParams: forward_prob must be in [0,1)");
    if (!(backward_ratio >= 0.0 && backward_ratio < 1.0))
      throw std::invalid_argument("ForestFireParams: backward_ratio must be in [0,1)");
    if (ambassadors == 0)
      throw std::invalid_argument("ForestFireParams: ambassadors must be positive");
    if (target_nodes < 1)
      throw std::invalid_argument("ForestFireParams: target_nodes must be positive");
    if (start_cycle < 1 || start_cycle > target_nodes)
      throw std::invalid_argument("ForestFireParams: start_cycle must be in [1, target_nodes]");
  }
};

inline Graph forest_fire_generate(const ForestFireParams& params, Rng& rng) {
  params.validate();
  const NodeId n = params.target_nodes;
  std::vector<std::vector<NodeId>> out_adj(n);
  std::vector<std::vector<NodeId>> in_adj(n);
  std::vector<Edge> edges;
  auto link = [&](NodeId u, NodeId v) {
    out_adj[u].push_back(v);
    in_adj[v].push_back(u);
    edges.push_back(Edge{u, v});
  };

  NodeId start = static_cast<NodeId>(std::min<std::size_t>(params.start_cycle, n));
  if (start >= 2)
    for (NodeId i = 0; i < start; ++i) link(i, (i + 1) % start);

  const double backward_prob = params.backward_ratio * params.forward_prob;
  std::vector<std::uint8_t> burned(n, 0);
  std::vector<NodeId> burned_list;
  std::vector<NodeId> frontier;
  std::vector<NodeId> scratch;

  for (NodeId v = start; v < n; ++v) {
    burned_list.clear();
    frontier.clear();
    auto burn = [&](NodeId w) {
      burned[w] = 1;
      burned_list.push_back(w);
      frontier.push_back(w);
    };

    // Ambassadors, distinct and uniform over existing nodes.
    unsigned want = static_cast<unsigned>(std::min<std::uint64_t>(params.ambassadors, v));
    while (burned_list.size() < want) {
      NodeId w = static_cast<NodeId>(rng.below(v));
      if (!burned[w]) burn(w);
    }

    // Recursive burning, breadth order over the frontier.
    auto ignite_some = [&](std::span<const NodeId> neighbors, std::uint64_t count) {
      scratch.clear();
      for (NodeId x : neighbors)
        if (!burned[x]) scratch.push_back(x);
      std::uint64_t take = std::min<std::uint64_t>(count, scratch.size());
      for (std::uint64_t i = 0; i < take; ++i) {
        // partial Fisher-Yates draw
        std::size_t j = i + static_cast<std::size_t>(rng.below(scratch.size() - i));
        std::swap(scratch[i], scratch[j]);
        burn(scratch[i]);
      }
    };
    for (std::size_t f = 0; f < frontier.size(); ++f) {
      NodeId w = frontier[f];
      ignite_some(out_adj[w], rng.geometric(params.forward_prob));
      ignite_some(in_adj[w], rng.geometric(backward_prob));
    }

    for (NodeId w : burned_list) link(v, w);
    for (NodeId w : burned_list) burned[w] = 0;
  }
  return Graph::from_edges(n, std::move(edges));
}

// Uniform directed graph with an exact edge count. With cover_all_nodes a
// random permutation path guarantees every node is incident to an edge
// (requires edges >= nodes - 1), so file round-trips keep the node count.
inline Graph uniform_random_graph(NodeId nodes, std::size_t edges, Rng& rng,
                                  bool cover_all_nodes = true) {
  if (nodes < 2) throw std::invalid_argument("uniform_random_graph: need >= 2 nodes");
  std::uint64_t capacity = static_cast<std::uint64_t>(nodes) * (nodes - 1);
  if (edges == 0 || edges > capacity)
    throw std::invalid_argument("uniform_random_graph: unreachable edge count");
  if (cover_all_nodes && edges < static_cast<std::size_t>(nodes) - 1)
    throw std::invalid_argument("uniform_random_graph: too few edges to cover all nodes");

  std::unordered_set<std::uint64_t> placed;
  placed.reserve(edges * 2);
  std::vector<Edge> out;
  out.reserve(edges);
  auto add = [&](NodeId u, NodeId v) {
    if (u == v) return false;
    if (!placed.insert(edge_key(Edge{u, v})).second) return false;
    out.push_back(Edge{u, v});
    return true;
  };

  if (cover_all_nodes) {
    std::vector<NodeId> order(nodes);
    std::iota(order.begin(), order.end(), NodeId{0});
    for (std::size_t i = nodes; i > 1; --i)
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) add(order[i], order[i + 1]);
  }
  while (out.size() < edges) {
    NodeId u = static_cast<NodeId>(rng.below(nodes));
    NodeId v = static_cast<NodeId>(rng.below(nodes));
    add(u, v);
  }
  return Graph::from_edges(nodes, std::move(out));
}

// Built-in benchmark networks with their generator settings and the
// transmission probability used for diffusion over them.
struct NetworkPreset {
  std::string_view name;
  enum class Kind { kronecker, forest_fire } kind;
  KroneckerParams kronecker;
  ForestFireParams forest_fire;
  double transmission_probability;
};

inline std::span<const NetworkPreset> builtin_presets() {
  using Kind = NetworkPreset::Kind;
  static const NetworkPreset presets[] = {
      {"core-periphery", Kind::kronecker,
       {{0.9, 0.5, 0.5, 0.3}, 13, 15000}, {}, 0.1},
      {"hierarchical", Kind::kronecker,
       {{0.5, 0.5, 0.5, 0.5}, 13, 11707}, {}, 0.5},
      {"random", Kind::kronecker,
       {{0.9, 0.1, 0.1, 0.9}, 13, 15000}, {}, 0.5},
      // forward_prob calibrated so the median edge count lands on the
      // 14305-edge target at 10000 nodes (see README).
      {"forest-fire", Kind::forest_fire, {},
       {0.27, 0.1, 1, 10000, 5, 14305}, 0.5},
      // 2^10-node smoke-scale variant of core-periphery.
      {"core-periphery-1k", Kind::kronecker,
       {{0.9, 0.5, 0.5, 0.3}, 10, 1875}, {}, 0.1},
  };
  return presets;
}

inline const NetworkPreset* find_preset(std::string_view name) {
  for (const NetworkPreset& p : builtin_presets())
    if (p.name == name) return &p;
  return nullptr;
}

inline Graph generate_preset(const NetworkPreset& preset, Rng& rng) {
  return preset.kind == NetworkPreset::Kind::kronecker
             ? kronecker_generate(preset.kronecker, rng)
             : forest_fire_generate(preset.forest_fire, rng);
}

}  // namespace diffsample
