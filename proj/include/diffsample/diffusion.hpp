#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "diffsample/errors.hpp"
#include "diffsample/graph.hpp"
#include "diffsample/rng.hpp"

namespace diffsample {

// One diffusion episode. The infection vector holds the transmission edges
// in traversal order; every edge's source is the seed or the target of an
// earlier edge, and every node is infected at most once.
struct Cascade {
  std::uint32_t id = 0;
  NodeId seed = 0;
  std::vector<Edge> infection_vector;
  std::vector<NodeId> infected;  // unique, infection order, front() == seed
};

// Replays the infection vector and checks the causality invariant.
inline bool cascade_is_causal(const Cascade& c) {
  std::unordered_set<NodeId> infected{c.seed};
  for (const Edge& e : c.infection_vector) {
    if (!infected.contains(e.src)) return false;
    if (!infected.insert(e.dst).second) return false;  // re-infection
  }
  return true;
}

enum class SeedPolicy { uniform_random };

struct DiffusionConfig {
  double transmission_probability = 0.0;  // per-edge infection chance
  double target_coverage = 0.5;           // fraction of underlying edges in G*
  std::size_t max_cascades = 0;           // simulation attempts cap; 0 = 50 * n
  SeedPolicy seed_policy = SeedPolicy::uniform_random;
  bool allow_partial = false;  // return a shortfall network instead of throwing

  void validate() const {
    if (!(transmission_probability >= 0.0 && transmission_probability <= 1.0))
      throw std::invalid_argument("DiffusionConfig: transmission probability must be in [0,1]");
    if (!(target_coverage > 0.0 && target_coverage <= 1.0))
      throw std::invalid_argument("DiffusionConfig: target coverage must be in (0,1]");
  }
};

// Independent-cascade simulator with reusable per-graph scratch so that
// runs of many cascades avoid O(n) resets.
class CascadeSimulator {
 public:
  explicit CascadeSimulator(const Graph& g)
      : graph_(&g), stamp_(g.node_count(), 0) {}

  Cascade run(NodeId seed, double transmission_probability, Rng& rng) {
    if (seed >= graph_->node_count())
      throw std::invalid_argument("CascadeSimulator: seed out of range");
    ++epoch_;
    Cascade c;
    c.seed = seed;
    c.infected.push_back(seed);
    stamp_[seed] = epoch_;
    // Breadth order: each newly infected node gets one chance per
    // still-uninfected out-neighbor, in adjacency order.
    for (std::size_t i = 0; i < c.infected.size(); ++i) {
      NodeId u = c.infected[i];
      for (NodeId v : graph_->out_neighbors(u)) {
        if (stamp_[v] == epoch_) continue;
        if (rng.bernoulli(transmission_probability)) {
          stamp_[v] = epoch_;
          c.infected.push_back(v);
          c.infection_vector.push_back(Edge{u, v});
        }
      }
    }
    return c;
  }

 private:
  const Graph* graph_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

inline Cascade simulate_cascade(const Graph& g, NodeId seed,
                                double transmission_probability, Rng& rng) {
  if (!(transmission_probability >= 0.0 && transmission_probability <= 1.0))
    throw std::invalid_argument("simulate_cascade: transmission probability must be in [0,1]");
  CascadeSimulator simulator(g);
  return simulator.run(seed, transmission_probability, rng);
}

// Union of cascades over one underlying graph: the diffusion network
// G* = (V*, E*) plus back-references to the cascades that generated it.
// Node ids stay in the source graph's id space.
class DiffusionNetwork {
 public:
  static DiffusionNetwork from_cascades(const Graph& source,
                                        std::vector<Cascade> cascades,
                                        bool shortfall = false) {
    DiffusionNetwork dn;
    dn.source_nodes_ = source.node_count();
    dn.source_edges_ = source.edge_count();
    dn.shortfall_ = shortfall;

    std::unordered_set<std::uint64_t> source_keys;
    source_keys.reserve(source.edge_count() * 2);
    for (const Edge& e : source.edges()) source_keys.insert(edge_key(e));

    dn.cascades_.reserve(cascades.size());
    for (Cascade& c : cascades) {
      if (c.infection_vector.empty()) continue;  // contributes no element
      for (const Edge& e : c.infection_vector)
        if (!source_keys.contains(edge_key(e)))
          throw std::invalid_argument("DiffusionNetwork: cascade edge not in source graph");
      if (!cascade_is_causal(c))
        throw std::invalid_argument("DiffusionNetwork: cascade violates causality");
      c.id = static_cast<std::uint32_t>(dn.cascades_.size());
      dn.cascades_.push_back(std::move(c));
    }

    std::unordered_set<std::uint64_t> keys;
    std::unordered_set<NodeId> seed_set;
    for (const Cascade& c : dn.cascades_) {
      seed_set.insert(c.seed);
      for (const Edge& e : c.infection_vector) keys.insert(edge_key(e));
    }
    dn.edge_keys_ = std::move(keys);
    dn.edges_.reserve(dn.edge_keys_.size());
    for (std::uint64_t k : dn.edge_keys_) dn.edges_.push_back(edge_from_key(k));
    std::sort(dn.edges_.begin(), dn.edges_.end());

    std::unordered_set<NodeId> node_set;
    for (const Edge& e : dn.edges_) {
      node_set.insert(e.src);
      node_set.insert(e.dst);
    }
    dn.nodes_.assign(node_set.begin(), node_set.end());
    std::sort(dn.nodes_.begin(), dn.nodes_.end());
    dn.seeds_.assign(seed_set.begin(), seed_set.end());
    std::sort(dn.seeds_.begin(), dn.seeds_.end());

    dn.graph_ = Graph::from_edges(source.node_count(),
                                  {dn.edges_.begin(), dn.edges_.end()});
    return dn;
  }

  // G* as a graph over the source id space (isolated ids untouched).
  const Graph& diffusion_graph() const { return graph_; }
  std::span<const Edge> diffusion_edges() const { return edges_; }
  std::span<const NodeId> diffusion_nodes() const { return nodes_; }
  std::span<const Cascade> cascades() const { return cascades_; }
  std::span<const NodeId> seed_nodes() const { return seeds_; }

  bool contains_edge(Edge e) const { return edge_keys_.contains(edge_key(e)); }
  const std::unordered_set<std::uint64_t>& edge_key_set() const { return edge_keys_; }

  std::size_t source_node_count() const { return source_nodes_; }
  std::size_t source_edge_count() const { return source_edges_; }

  // |E*| / m over the underlying graph.
  double coverage() const {
    return source_edges_ == 0
               ? 0.0
               : static_cast<double>(edges_.size()) / static_cast<double>(source_edges_);
  }

  // True when construction stopped below the requested coverage.
  bool shortfall() const { return shortfall_; }

 private:
  std::vector<Cascade> cascades_;
  std::vector<Edge> edges_;
  std::vector<NodeId> nodes_;
  std::vector<NodeId> seeds_;
  std::unordered_set<std::uint64_t> edge_keys_;
  Graph graph_;
  std::size_t source_nodes_ = 0;
  std::size_t source_edges_ = 0;
  bool shortfall_ = false;
};

// Draws seeds and accumulates cascades until the diffusion network covers
// ceil(target_coverage * m) distinct edges. Cascades that infect nobody are
// dropped; every simulation attempt counts against max_cascades so tiny
// transmission probabilities still terminate. On an unreachable target this
// throws CoverageError carrying the achieved coverage, unless
// cfg.allow_partial is set.
inline DiffusionNetwork build_diffusion_network(const Graph& g,
                                                const DiffusionConfig& cfg,
                                                Rng& rng) {
  cfg.validate();
  if (g.edge_count() < 1)
    throw std::invalid_argument("build_diffusion_network: graph has no edges");
  const std::size_t target = static_cast<std::size_t>(
      std::ceil(cfg.target_coverage * static_cast<double>(g.edge_count())));
  const std::size_t attempt_cap =
      cfg.max_cascades ? cfg.max_cascades : 50 * static_cast<std::size_t>(g.node_count());

  CascadeSimulator simulator(g);
  std::unordered_set<std::uint64_t> covered;
  covered.reserve(target * 2);
  std::vector<Cascade> cascades;
  std::size_t attempts = 0;
  while (covered.size() < target && attempts < attempt_cap) {
    ++attempts;
    NodeId seed = static_cast<NodeId>(rng.below(g.node_count()));
    Cascade c = simulator.run(seed, cfg.transmission_probability, rng);
    if (c.infection_vector.empty()) continue;
    for (const Edge& e : c.infection_vector) covered.insert(edge_key(e));
    cascades.push_back(std::move(c));
  }

  const bool short_of_target = covered.size() < target;
  if (short_of_target && !cfg.allow_partial) {
    double achieved = static_cast<double>(covered.size()) / static_cast<double>(g.edge_count());
    throw CoverageError("build_diffusion_network: coverage " + std::to_string(achieved) +
                            " below target after " + std::to_string(attempts) + " cascades",
                        achieved);
  }
  return DiffusionNetwork::from_cascades(g, std::move(cascades), short_of_target);
}

// --- cascade set persistence ------------------------------------------------
//
// Text format, one cascade per record:
//   C <id> <seed>
//   <src> <dst>        (one line per infection-vector edge, in order)
// Records are separated by blank lines. The reader validates causality.

inline void write_cascades(std::ostream& out, std::span<const Cascade> cascades) {
  for (const Cascade& c : cascades) {
    out << "C " << c.id << ' ' << c.seed << '\n';
    for (const Edge& e : c.infection_vector) out << e.src << ' ' << e.dst << '\n';
    out << '\n';
  }
}

inline std::vector<Cascade> read_cascades(std::istream& in) {
  std::vector<Cascade> cascades;
  std::string line;
  std::size_t line_no = 0;
  Cascade current;
  bool open = false;

  auto finish = [&]() {
    if (!open) return;
    if (!cascade_is_causal(current))
      throw ParseError("cascade " + std::to_string(current.id) + " violates causality");
    cascades.push_back(std::move(current));
    current = Cascade{};
    open = false;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) {
      finish();
      continue;
    }
    if (first == "C") {
      finish();
      std::uint64_t id = 0, seed = 0;
      std::string extra;
      if (!(tokens >> id >> seed) || (tokens >> extra))
        throw ParseError("expected 'C <id> <seed>'", line_no);
      current.id = static_cast<std::uint32_t>(id);
      current.seed = static_cast<NodeId>(seed);
      current.infected.assign(1, current.seed);
      open = true;
      continue;
    }
    if (!open) throw ParseError("edge before cascade header", line_no);
    std::uint64_t src = 0, dst = 0;
    std::string extra;
    std::istringstream edge_tokens(line);
    if (!(edge_tokens >> src >> dst) || (edge_tokens >> extra))
      throw ParseError("expected '<src> <dst>'", line_no);
    current.infection_vector.push_back(
        Edge{static_cast<NodeId>(src), static_cast<NodeId>(dst)});
    current.infected.push_back(static_cast<NodeId>(dst));
  }
  finish();
  return cascades;
}

inline std::vector<Cascade> read_cascades_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open cascade file: " + path);
  return read_cascades(in);
}

inline void write_cascades_file(const std::string& path, std::span<const Cascade> cascades) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write cascade file: " + path);
  write_cascades(out, cascades);
  out.flush();
  if (!out) throw Error("write failed: " + path);
}

}  // namespace diffsample
