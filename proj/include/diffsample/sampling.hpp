#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "diffsample/diffusion.hpp"
#include "diffsample/errors.hpp"
#include "diffsample/graph.hpp"
#include "diffsample/rng.hpp"

namespace diffsample {

enum class Approach { sbs, dbs };
enum class Technique { bfs, rw };
enum class SampleOrigin { underlying, diffusion };

inline std::string_view to_string(Approach a) { return a == Approach::sbs ? "SBS" : "DBS"; }
inline std::string_view to_string(Technique t) { return t == Technique::bfs ? "BFS" : "RW"; }
inline std::string_view to_string(SampleOrigin o) {
  return o == SampleOrigin::underlying ? "underlying" : "diffusion";
}

inline std::optional<Approach> parse_approach(std::string_view s) {
  if (s == "sbs" || s == "SBS") return Approach::sbs;
  if (s == "dbs" || s == "DBS") return Approach::dbs;
  return std::nullopt;
}

inline std::optional<Technique> parse_technique(std::string_view s) {
  if (s == "bfs" || s == "BFS") return Technique::bfs;
  if (s == "rw" || s == "RW") return Technique::rw;
  return std::nullopt;
}

struct SampleSpec {
  Approach approach = Approach::dbs;
  Technique technique = Technique::bfs;
  double rate = 1.0;  // fraction of diffusion edges to collect, (0,1]
  std::uint64_t rng_seed = 0;
  double restart_probability = 0.15;  // RW chance to jump back to a visited node
  std::size_t stall_limit = 0;        // steps without a new edge; 0 = 100*sqrt(budget)
  std::size_t step_cap_factor = 10000;

  void validate() const {
    if (!(rate > 0.0 && rate <= 1.0))
      throw std::invalid_argument("SampleSpec: rate must be in (0,1]");
    if (!(restart_probability >= 0.0 && restart_probability < 1.0))
      throw std::invalid_argument("SampleSpec: restart probability must be in [0,1)");
  }
};

struct SampledNetwork {
  std::vector<Edge> edges;           // distinct, in collection order
  std::vector<NodeId> nodes;         // endpoints of edges, sorted
  std::vector<NodeId> explored_nodes;  // pre-extraction endpoints (SBS keeps them)
  SampleSpec spec;
  SampleOrigin origin = SampleOrigin::underlying;
  std::size_t budget = 0;       // edge budget handed to the crawl
  std::size_t budget_used = 0;  // edges collected before any extraction
  bool exhausted = false;       // supply ran out below the budget
};

namespace detail {

inline std::vector<NodeId> sorted_endpoints(std::span<const Edge> edges) {
  std::vector<NodeId> nodes;
  nodes.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    nodes.push_back(e.src);
    nodes.push_back(e.dst);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

}  // namespace detail

// Queue-driven crawl over out-links. Dequeuing u collects every edge (u, v)
// and enqueues unvisited targets, stopping mid-scan once the budget is met.
// When the queue drains with budget left, the crawl restarts from a uniformly
// random unvisited node that still has out-edges; if none remains the supply
// is exhausted.
inline SampledNetwork bfs_explore(const Graph& g, NodeId start,
                                  std::size_t edge_budget, Rng& rng) {
  if (edge_budget < 1) throw std::invalid_argument("bfs_explore: budget must be positive");
  if (g.edge_count() < 1) throw std::invalid_argument("bfs_explore: graph has no edges");
  if (start >= g.node_count()) throw std::invalid_argument("bfs_explore: start out of range");

  SampledNetwork sample;
  std::vector<std::uint8_t> visited(g.node_count(), 0);
  std::vector<NodeId> queue;
  std::size_t head = 0;
  auto visit = [&](NodeId u) {
    visited[u] = 1;
    queue.push_back(u);
  };
  visit(start);

  std::vector<NodeId> candidates;
  while (sample.edges.size() < edge_budget) {
    if (head == queue.size()) {
      // Restart: unvisited nodes with out-edges still have all of them
      // uncollected, because edges are only collected at dequeue time.
      candidates.clear();
      for (NodeId u = 0; u < g.node_count(); ++u)
        if (!visited[u] && g.out_degree(u) > 0) candidates.push_back(u);
      if (candidates.empty()) {
        sample.exhausted = true;
        break;
      }
      visit(rng.pick(candidates));
    }
    NodeId u = queue[head++];
    for (NodeId v : g.out_neighbors(u)) {
      sample.edges.push_back(Edge{u, v});
      if (!visited[v]) visit(v);
      if (sample.edges.size() == edge_budget) break;
    }
  }
  sample.nodes = detail::sorted_endpoints(sample.edges);
  sample.explored_nodes = sample.nodes;
  sample.budget = edge_budget;
  sample.budget_used = sample.edges.size();
  return sample;
}

// Random walk over out-links. Each step either jumps back to a uniformly
// random visited node (restart probability, and always at a node without
// out-links) or moves along a uniformly random out-link, collecting the
// traversed edge; only first traversals count toward the budget. Once
// stall_limit consecutive steps pass without a new edge the walk relocates to
// a uniformly random node of g before every step until it finds one, which
// keeps exhaustive budgets reachable on fragmented graphs. A step cap bounds
// the whole crawl.
inline SampledNetwork rw_explore(const Graph& g, NodeId start,
                                 std::size_t edge_budget, const SampleSpec& spec,
                                 Rng& rng) {
  spec.validate();
  if (edge_budget < 1) throw std::invalid_argument("rw_explore: budget must be positive");
  if (g.edge_count() < 1) throw std::invalid_argument("rw_explore: graph has no edges");
  if (start >= g.node_count()) throw std::invalid_argument("rw_explore: start out of range");

  const std::size_t stall_limit =
      spec.stall_limit ? spec.stall_limit
                       : static_cast<std::size_t>(
                             std::llround(100.0 * std::sqrt(static_cast<double>(edge_budget))));
  const std::size_t step_cap = spec.step_cap_factor * edge_budget;

  SampledNetwork sample;
  std::unordered_set<std::uint64_t> collected;
  collected.reserve(edge_budget * 2);
  std::vector<std::uint8_t> visited_flag(g.node_count(), 0);
  std::vector<NodeId> visited;
  auto visit = [&](NodeId u) {
    if (!visited_flag[u]) {
      visited_flag[u] = 1;
      visited.push_back(u);
    }
  };

  NodeId current = start;
  visit(current);
  std::size_t steps = 0;
  std::size_t stalled = 0;
  while (sample.edges.size() < edge_budget && steps < step_cap) {
    ++steps;
    if (stalled >= stall_limit) {
      current = static_cast<NodeId>(rng.below(g.node_count()));
      visit(current);
    }
    if (g.out_degree(current) == 0) {
      current = rng.pick(visited);
      ++stalled;
      continue;
    }
    if (rng.bernoulli(spec.restart_probability)) {
      current = rng.pick(visited);
      ++stalled;
      continue;
    }
    std::span<const NodeId> next = g.out_neighbors(current);
    NodeId v = next[static_cast<std::size_t>(rng.below(next.size()))];
    Edge e{current, v};
    if (collected.insert(edge_key(e)).second) {
      sample.edges.push_back(e);
      stalled = 0;
    } else {
      ++stalled;
    }
    current = v;
    visit(v);
  }
  sample.exhausted = sample.edges.size() < edge_budget;
  sample.nodes = detail::sorted_endpoints(sample.edges);
  sample.explored_nodes = sample.nodes;
  sample.budget = edge_budget;
  sample.budget_used = sample.edges.size();
  return sample;
}

namespace detail {

inline SampledNetwork run_technique(const Graph& g, NodeId start,
                                    std::size_t budget, const SampleSpec& spec,
                                    Rng& rng) {
  return spec.technique == Technique::bfs ? bfs_explore(g, start, budget, rng)
                                          : rw_explore(g, start, budget, spec, rng);
}

}  // namespace detail

// Diffusion-based sampling: crawl the diffusion network itself from a random
// diffusion node, with budget round(rate * |E*|), at least 1.
inline SampledNetwork sample_dbs(const DiffusionNetwork& dn, const SampleSpec& spec,
                                 Rng& rng) {
  spec.validate();
  if (spec.approach != Approach::dbs)
    throw std::invalid_argument("sample_dbs: spec approach is not DBS");
  const std::size_t supply = dn.diffusion_edges().size();
  if (supply == 0) throw std::invalid_argument("sample_dbs: empty diffusion network");
  const auto budget = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(spec.rate * static_cast<double>(supply))));

  NodeId start = dn.diffusion_nodes()[static_cast<std::size_t>(
      rng.below(dn.diffusion_nodes().size()))];
  SampledNetwork sample = detail::run_technique(dn.diffusion_graph(), start, budget, spec, rng);
  sample.spec = spec;
  sample.origin = SampleOrigin::diffusion;
  return sample;
}

// Structure-based sampling: crawl the underlying graph with the edge budget
// round(rate * coverage * m) — the count a DBS run at the same rate would
// collect — then keep only edges that belong to the diffusion network.
// budget_used records the pre-extraction count.
inline SampledNetwork sample_sbs(const Graph& g, const DiffusionNetwork& dn,
                                 const SampleSpec& spec, Rng& rng) {
  spec.validate();
  if (spec.approach != Approach::sbs)
    throw std::invalid_argument("sample_sbs: spec approach is not SBS");
  if (g.edge_count() < 1) throw std::invalid_argument("sample_sbs: graph has no edges");
  // coverage * m == |E*| exactly, so compute the budget from |E*| and keep
  // budget parity with DBS free of float drift.
  const auto budget = static_cast<std::size_t>(
      std::llround(spec.rate * static_cast<double>(dn.diffusion_edges().size())));
  if (budget == 0)
    throw std::domain_error("sample_sbs: budget rounds to zero, use a larger sampling rate");

  NodeId start = static_cast<NodeId>(rng.below(g.node_count()));
  SampledNetwork crawl = detail::run_technique(g, start, budget, spec, rng);

  SampledNetwork sample;
  sample.spec = spec;
  sample.origin = SampleOrigin::underlying;
  sample.budget = crawl.budget;
  sample.budget_used = crawl.edges.size();
  sample.exhausted = crawl.exhausted;
  sample.explored_nodes = crawl.nodes;
  sample.edges.reserve(crawl.edges.size());
  for (const Edge& e : crawl.edges)
    if (dn.contains_edge(e)) sample.edges.push_back(e);
  sample.nodes = detail::sorted_endpoints(sample.edges);
  return sample;
}

// --- sidecar metadata --------------------------------------------------------

inline void write_sample_metadata(std::ostream& out, const SampledNetwork& s) {
  out << "approach=" << to_string(s.spec.approach) << '\n'
      << "technique=" << to_string(s.spec.technique) << '\n';
  char rate[32];
  std::snprintf(rate, sizeof rate, "%.6f", s.spec.rate);
  out << "mu=" << rate << '\n'
      << "seed=" << s.spec.rng_seed << '\n'
      << "budget=" << s.budget << '\n'
      << "budget_used=" << s.budget_used << '\n'
      << "origin=" << to_string(s.origin) << '\n'
      << "edges=" << s.edges.size() << '\n'
      << "exhausted=" << (s.exhausted ? "true" : "false") << '\n';
}

struct SampleMetadata {
  Approach approach = Approach::dbs;
  Technique technique = Technique::bfs;
  double rate = 0.0;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::size_t budget_used = 0;
  SampleOrigin origin = SampleOrigin::diffusion;
  std::size_t edges = 0;
  bool exhausted = false;
};

inline SampleMetadata read_sample_metadata(std::istream& in) {
  SampleMetadata meta;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value", line_no);
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (key == "approach") {
      auto a = parse_approach(value);
      if (!a) throw ParseError("unknown approach: " + value, line_no);
      meta.approach = *a;
    } else if (key == "technique") {
      auto t = parse_technique(value);
      if (!t) throw ParseError("unknown technique: " + value, line_no);
      meta.technique = *t;
    } else if (key == "mu") {
      meta.rate = std::stod(value);
    } else if (key == "seed") {
      meta.seed = std::stoull(value);
    } else if (key == "budget") {
      meta.budget = std::stoull(value);
    } else if (key == "budget_used") {
      meta.budget_used = std::stoull(value);
    } else if (key == "origin") {
      meta.origin = value == "underlying" ? SampleOrigin::underlying : SampleOrigin::diffusion;
    } else if (key == "edges") {
      meta.edges = std::stoull(value);
    } else if (key == "exhausted") {
      meta.exhausted = value == "true";
    } else {
      throw ParseError("unknown metadata key: " + key, line_no);
    }
  }
  return meta;
}

}  // namespace diffsample
