#include "doctest.h"

#include <sstream>

#include "hgr/edge_list.hpp"
#include "hgr/errors.hpp"
#include "hgr/hosts.hpp"
#include "oracles.hpp"

using namespace hgr;

TEST_CASE("girth of small named graphs") {
  CHECK(girth(cycle_graph(5)) == 5u);
  CHECK(girth(complete_graph(4)) == 3u);
  CHECK(girth(petersen_graph()) == 5u);
  CHECK_FALSE(girth(path_graph(6)).has_value());
  CHECK_FALSE(girth(star_graph(4)).has_value());
  CHECK_FALSE(girth(regular_tree_ball(3, 4)).has_value());
}

TEST_CASE("girth agrees with the edge-deletion oracle on random graphs") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Graph g = random_regular(30 + 2 * seed, 3 + seed % 3, seed);
    CHECK(girth(g) == oracle::girth(g));
  }
}

TEST_CASE("distance layers") {
  const Graph p = path_graph(3);  // v - a - b
  auto layers = distance_layers(p, VertexSet::single(0, 3), 2);
  REQUIRE(layers.layers.size() == 3);
  CHECK(layers.layers[0] == VertexSet::single(0, 3));
  CHECK(layers.layers[1] == VertexSet::single(1, 3));
  CHECK(layers.layers[2] == VertexSet::single(2, 3));

  layers = distance_layers(p, VertexSet::all(3), 2);
  CHECK(layers.layers[0].size() == 3);
  CHECK(layers.layers[1].empty());

  layers = distance_layers(petersen_graph(), VertexSet::single(0, 10), 2);
  CHECK(layers.layers[0].size() == 1);
  CHECK(layers.layers[1].size() == 3);
  CHECK(layers.layers[2].size() == 6);
  CHECK(layers.depth() == 2);
  CHECK(layers.ball().size() == 10);
}

TEST_CASE("neighborhood") {
  const Graph c5 = cycle_graph(5);
  CHECK(neighborhood(c5, VertexSet::single(0, 5)) == VertexSet({1, 4}, 5));
  CHECK(neighborhood(petersen_graph(), VertexSet::all(10)) == VertexSet::all(10));
  const Graph g = random_regular(40, 4, 3);
  const std::vector<Vertex> s{0, 5, 6, 17, 39};
  CHECK(neighborhood(g, VertexSet(s, 40)) == VertexSet(oracle::neighborhood(g, s), 40));
}

TEST_CASE("biregularity") {
  // K_{2,3}: side a = {0,1} with degree 3, side b = {2,3,4} with degree 2.
  std::vector<Edge> edges;
  for (Vertex a : {0u, 1u}) {
    for (Vertex b : {2u, 3u, 4u}) edges.push_back({a, b});
  }
  const Graph k23 = Graph::from_edges(5, edges);
  const VertexSet a({0, 1}, 5), b({2, 3, 4}, 5);
  CHECK(is_biregular(k23, a, b, 3, 2));
  CHECK_FALSE(is_biregular(k23, a, b, 2, 3));
}

TEST_CASE("graph construction rejects bad input") {
  const std::vector<Edge> loop{{1, 1}};
  CHECK_THROWS_AS(Graph::from_edges(3, loop), InvalidGraph);
  const std::vector<Edge> dup{{0, 1}, {0, 1}};
  CHECK_THROWS_AS(Graph::from_edges(3, dup), InvalidGraph);
  const std::vector<Edge> range{{0, 3}};
  CHECK_THROWS_AS(Graph::from_edges(3, range), InvalidGraph);
  CHECK_THROWS_AS(VertexSet({0, 7}, 5), InvalidGraph);
}

TEST_CASE("vertex set algebra") {
  const VertexSet a({3, 1, 1, 2}, 6), b({2, 5}, 6);
  CHECK(a.size() == 3);
  CHECK(a.set_union(b) == VertexSet({1, 2, 3, 5}, 6));
  CHECK(a.set_difference(b) == VertexSet({1, 3}, 6));
  CHECK(VertexSet({1, 3}, 6).is_subset_of(a));
  CHECK(VertexSet::range(2, 5, 6) == VertexSet({2, 3, 4}, 6));
}

TEST_CASE("two-core, induced subgraphs, connectivity, bipartition") {
  // Triangle with a pendant path.
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}};
  const Graph g = Graph::from_edges(5, edges);
  const auto core = two_core_mask(g);
  CHECK(std::vector<char>(core.begin(), core.end()) == std::vector<char>{1, 1, 1, 0, 0});
  const Graph tri = induced_subgraph(g, VertexSet({0, 1, 2}, 5));
  CHECK(tri.num_edges() == 3);
  CHECK(is_connected(g));
  CHECK_FALSE(bipartition(g).has_value());
  CHECK(bipartition(cycle_graph(6)).has_value());
  CHECK(internal_edges(g, VertexSet({0, 1, 2, 3}, 5)) == 4);
}

TEST_CASE("edge list round trip") {
  const Graph g = random_regular(50, 3, 9);
  std::stringstream buf;
  write_edge_list(buf, g);
  CHECK(read_edge_list(buf) == g);
}

TEST_CASE("edge list parse errors") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_edge_list(in);
  };
  CHECK_THROWS_AS(parse(""), FormatError);
  CHECK_THROWS_AS(parse("3 1\n0 0\n"), FormatError);
  CHECK_THROWS_AS(parse("3 2\n0 1\n0 1\n"), FormatError);
  CHECK_THROWS_AS(parse("3 1\n0 5\n"), FormatError);
  CHECK_THROWS_AS(parse("3 2\n0 1\n"), FormatError);
  CHECK_THROWS_AS(parse("3 1\n2 1\n"), FormatError);
  CHECK_THROWS_AS(parse("3 1\n0 1 2\n"), FormatError);
  CHECK(parse("# comment\n3 1\n0 1\n").num_edges() == 1);
}
