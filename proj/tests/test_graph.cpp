#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <sstream>

#include "diffsample/edge_list.hpp"
#include "diffsample/generators.hpp"
#include "diffsample/graph.hpp"
#include "diffsample/rng.hpp"

using namespace diffsample;

TEST_CASE("graph construction validates and orders edges", "[graph]") {
  Graph g = Graph::from_edges(4, {{2, 1}, {0, 1}, {0, 3}, {1, 2}});
  REQUIRE(g.node_count() == 4);
  REQUIRE(g.edge_count() == 4);
  REQUIRE(g.edges()[0] == Edge{0, 1});
  REQUIRE(g.edges()[1] == Edge{0, 3});

  CHECK(g.out_degree(0) == 2);
  CHECK(g.in_degree(1) == 2);
  REQUIRE(g.out_neighbors(0).size() == 2);
  CHECK(g.out_neighbors(0)[0] == 1);
  CHECK(g.out_neighbors(0)[1] == 3);
  REQUIRE(g.in_neighbors(2).size() == 1);
  CHECK(g.in_neighbors(2)[0] == 1);

  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), std::invalid_argument);
}

TEST_CASE("out-degrees agree with a brute-force count over the edge set", "[graph]") {
  Rng rng(7);
  for (int round = 0; round < 50; ++round) {
    NodeId n = static_cast<NodeId>(2 + rng.below(20));
    std::size_t m = 1 + rng.below(2 * n);
    Graph g = uniform_random_graph(n, std::min<std::size_t>(m, std::size_t(n) * (n - 1)), rng,
                                   false);
    std::map<NodeId, std::size_t> out_count, in_count;
    for (const Edge& e : g.edges()) {
      ++out_count[e.src];
      ++in_count[e.dst];
    }
    for (NodeId u = 0; u < g.node_count(); ++u) {
      REQUIRE(g.out_degree(u) == out_count[u]);
      REQUIRE(g.in_degree(u) == in_count[u]);
    }
  }
}

TEST_CASE("densification exponent reproduces reference snapshots", "[graph]") {
  CHECK(densification_exponent(1490, 19090) == Catch::Approx(1.34).margin(0.01));
  CHECK(densification_exponent(8192, 15000) == Catch::Approx(1.06).margin(0.01));
  CHECK(densification_exponent(1589, 2742) == Catch::Approx(1.07).margin(0.01));
  CHECK(densification_exponent(8192, 11707) == Catch::Approx(1.03).margin(0.01));
  CHECK(densification_exponent(10, 10) == Catch::Approx(1.0));
  CHECK(densification_exponent(2, 1) == 0.0);

  CHECK_THROWS_AS(densification_exponent(1, 1), std::domain_error);
  CHECK_THROWS_AS(densification_exponent(5, 0), std::domain_error);
}

TEST_CASE("graph_stats falls back to an undefined exponent", "[graph]") {
  Graph g = Graph::from_edges(2, {{0, 1}});
  GraphStats stats = graph_stats(g);
  REQUIRE(stats.densification.has_value());
  CHECK(*stats.densification == 0.0);

  Graph empty = Graph::from_edges(3, {});
  CHECK_FALSE(graph_stats(empty).densification.has_value());
}

TEST_CASE("edge list loads dense integer labels as-is", "[edge_list]") {
  std::istringstream in("0 1\n1 2\n");
  EdgeListLoad load = load_edge_list(in);
  CHECK(load.graph.node_count() == 3);
  CHECK(load.graph.edge_count() == 2);
  CHECK(load.labels.empty());  // identity mapping
  CHECK(load.graph.edges()[0] == Edge{0, 1});
  CHECK(load.graph.edges()[1] == Edge{1, 2});
}

TEST_CASE("edge list drops duplicates and self-loops with counts", "[edge_list]") {
  std::istringstream in("0 1\n0 1\n");
  EdgeListLoad load = load_edge_list(in);
  CHECK(load.graph.node_count() == 2);
  CHECK(load.graph.edge_count() == 1);
  CHECK(load.duplicate_edges == 1);

  std::istringstream with_loop("3 3\n0 1\n");
  EdgeListLoad load2 = load_edge_list(with_loop);
  CHECK(load2.self_loops == 1);
  CHECK(load2.graph.edge_count() == 1);
}

TEST_CASE("edge list remaps sparse or string labels in first-appearance order",
          "[edge_list]") {
  std::istringstream in("alice bob\nbob carol\n");
  EdgeListLoad load = load_edge_list(in);
  REQUIRE(load.labels.size() == 3);
  CHECK(load.labels[0] == "alice");
  CHECK(load.labels[1] == "bob");
  CHECK(load.labels[2] == "carol");
  CHECK(load.graph.edges()[0] == Edge{0, 1});

  std::istringstream sparse("10 20\n20 30\n");
  EdgeListLoad load2 = load_edge_list(sparse);
  CHECK(load2.graph.node_count() == 3);
  CHECK(load2.label(0) == "10");
}

TEST_CASE("edge list reports malformed input with line numbers", "[edge_list]") {
  std::istringstream one_token("0 1\n7\n");
  try {
    load_edge_list(one_token);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  std::istringstream three_tokens("0 1 2\n");
  CHECK_THROWS_AS(load_edge_list(three_tokens), ParseError);

  std::istringstream empty("# only a comment\n\n");
  CHECK_THROWS_AS(load_edge_list(empty), ParseError);
}

TEST_CASE("undirected ingestion yields both orientations", "[edge_list]") {
  std::istringstream in("0 1\n1 0\n");
  EdgeListLoad load = load_edge_list(in, /*directed=*/false);
  CHECK(load.graph.edge_count() == 2);
  CHECK(load.duplicate_edges == 2);
}

TEST_CASE("write/load round-trip preserves the edge set", "[edge_list]") {
  Rng rng(11);
  for (int round = 0; round < 25; ++round) {
    NodeId n = static_cast<NodeId>(2 + rng.below(30));
    std::size_t cap = std::size_t(n) * (n - 1);
    std::size_t m = 1 + rng.below(std::min<std::size_t>(cap, 3 * n));
    Graph g = uniform_random_graph(n, m, rng, false);

    std::ostringstream out;
    write_edge_list(out, g);
    std::istringstream in(out.str());
    EdgeListLoad load = load_edge_list(in);

    REQUIRE(load.graph.node_count() == g.node_count());  // pragma keeps isolated nodes
    REQUIRE(load.graph.edge_count() == g.edge_count());
    REQUIRE(std::equal(g.edges().begin(), g.edges().end(), load.graph.edges().begin()));
  }
}

TEST_CASE("nodes pragma pins the id space", "[edge_list]") {
  std::istringstream in("# nodes=5\n0 1\n");
  EdgeListLoad load = load_edge_list(in);
  CHECK(load.graph.node_count() == 5);

  std::istringstream bad("# nodes=2\n0 5\n");
  CHECK_THROWS_AS(load_edge_list(bad), ParseError);
}
