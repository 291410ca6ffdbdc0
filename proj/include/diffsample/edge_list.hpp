#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "diffsample/errors.hpp"
#include "diffsample/graph.hpp"

namespace diffsample {

// Result of ingesting an edge-list file. `labels` maps dense NodeId back to
// the original node label; it is left empty when the mapping is the identity
// (labels were already the dense 0-based integers, or a `# nodes=N` pragma
// fixed the id space).
struct EdgeListLoad {
  Graph graph;
  std::vector<std::string> labels;
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;

  std::string label(NodeId id) const {
    return labels.empty() ? std::to_string(id) : labels[id];
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline bool parse_u64(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace detail

// Reads "src dst" pairs from line-oriented text. '#'-prefixed lines are
// comments and blank lines are ignored; any other line must hold exactly two
// whitespace-separated labels. A `# nodes=N` comment pragma (as written by
// write_edge_list) pins the node count so isolated nodes survive a
// round-trip; with the pragma every label must be an integer below N.
// Without it, labels that happen to be exactly the dense integers 0..n-1 map
// to themselves, anything else is remapped in first-appearance order.
// Duplicate edges and self-loops are dropped and counted. With
// directed=false every line contributes both orientations.
inline EdgeListLoad load_edge_list(std::istream& in, bool directed = true) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::pair<std::string, std::string>> raw;
  bool have_pragma = false;
  std::uint64_t pragma_nodes = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = detail::trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      std::string_view rest = detail::trim(body.substr(1));
      if (rest.rfind("nodes=", 0) == 0) {
        if (!detail::parse_u64(rest.substr(6), pragma_nodes) || pragma_nodes == 0)
          throw ParseError("bad nodes pragma", line_no);
        have_pragma = true;
      }
      continue;
    }
    std::istringstream tokens{std::string(body)};
    std::string a, b, extra;
    if (!(tokens >> a >> b) || (tokens >> extra))
      throw ParseError("expected exactly two node labels", line_no);
    raw.emplace_back(std::move(a), std::move(b));
  }
  if (raw.empty()) throw ParseError("edge list holds no edges");

  EdgeListLoad result;
  NodeId node_count = 0;
  std::vector<std::pair<NodeId, NodeId>> id_pairs;
  id_pairs.reserve(raw.size());

  // Decide on the label mapping.
  bool numeric = true;
  std::vector<std::uint64_t> values(raw.size() * 2);
  for (std::size_t i = 0; i < raw.size() && numeric; ++i) {
    numeric = detail::parse_u64(raw[i].first, values[2 * i]) &&
              detail::parse_u64(raw[i].second, values[2 * i + 1]);
  }
  bool identity = false;
  if (numeric && have_pragma) {
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] >= pragma_nodes)
        throw ParseError("node id exceeds nodes pragma");
    node_count = static_cast<NodeId>(pragma_nodes);
    identity = true;
  } else if (have_pragma) {
    throw ParseError("nodes pragma requires integer node labels");
  } else if (numeric) {
    std::unordered_set<std::uint64_t> distinct(values.begin(), values.end());
    std::uint64_t max_value = 0;
    for (std::uint64_t v : values) max_value = std::max(max_value, v);
    identity = max_value + 1 == distinct.size();  // dense and 0-based
    if (identity) node_count = static_cast<NodeId>(max_value + 1);
  }

  if (identity) {
    for (std::size_t i = 0; i < raw.size(); ++i)
      id_pairs.emplace_back(static_cast<NodeId>(values[2 * i]),
                            static_cast<NodeId>(values[2 * i + 1]));
  } else {
    std::unordered_map<std::string, NodeId> ids;
    auto intern = [&](const std::string& label) {
      auto [it, inserted] = ids.emplace(label, static_cast<NodeId>(result.labels.size()));
      if (inserted) result.labels.push_back(label);
      return it->second;
    };
    for (const auto& [a, b] : raw) {
      NodeId u = intern(a);
      NodeId v = intern(b);
      id_pairs.emplace_back(u, v);
    }
    node_count = static_cast<NodeId>(result.labels.size());
  }

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(id_pairs.size() * 2);
  std::vector<Edge> edges;
  edges.reserve(id_pairs.size());
  auto add = [&](NodeId u, NodeId v) {
    if (u == v) {
      ++result.self_loops;
      return;
    }
    if (seen.insert(edge_key(Edge{u, v})).second)
      edges.push_back(Edge{u, v});
    else
      ++result.duplicate_edges;
  };
  for (auto [u, v] : id_pairs) {
    add(u, v);
    if (!directed) add(v, u);
  }

  result.graph = Graph::from_edges(node_count, std::move(edges));
  return result;
}

inline EdgeListLoad load_edge_list_file(const std::string& path, bool directed = true) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list: " + path);
  return load_edge_list(in, directed);
}

// Deterministic writer: nodes pragma, then edges sorted by (src, dst).
inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes=" << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << e.src << ' ' << e.dst << '\n';
}

inline void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write edge list: " + path);
  write_edge_list(out, g);
  out.flush();
  if (!out) throw Error("write failed: " + path);
}

}  // namespace diffsample
