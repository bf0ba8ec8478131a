#include "doctest.h"

#include <filesystem>

#include "hgr/errors.hpp"
#include "hgr/gadget.hpp"
#include "hgr/hosts.hpp"
#include "oracles.hpp"

using namespace hgr;

TEST_CASE("high girth generator") {
  const auto k4 = high_girth_regular(4, 3, 3, 1);
  CHECK(k4.graph == complete_graph(4));
  CHECK(k4.reached_target);

  const auto ten = high_girth_regular(10, 3, 5, 2);
  CHECK(ten.reached_target);
  CHECK(oracle::girth(ten.graph) == 5u);
  CHECK(oracle::is_regular(ten.graph, 3));

  CHECK_THROWS_AS(high_girth_regular(4, 3, 4, 1), InfeasibleTarget);
  CHECK_THROWS_AS(high_girth_regular(9, 3, 3, 1), InvalidParams);
  CHECK(moore_bound_vertices(3, 5) == 10);
  CHECK(moore_bound_vertices(3, 6) == 14);
  CHECK(moore_bound_vertices(4, 3) == 5);
}

TEST_CASE("subdivision") {
  const Subdivision k4 = subdivide(complete_graph(4));
  CHECK(k4.graph.num_vertices() == 10);
  CHECK(k4.u_set.size() == 4);
  CHECK(k4.v_set.size() == 6);
  CHECK(oracle::girth(k4.graph) == 6u);
  CHECK(is_biregular(k4.graph, k4.u_set, k4.v_set, 3, 2));

  CHECK(subdivide(cycle_graph(5)).graph.num_edges() == 10);
  CHECK(oracle::girth(subdivide(cycle_graph(5)).graph) == 10u);

  const Subdivision p = subdivide(petersen_graph());
  CHECK(p.u_set.size() == 10);
  CHECK(p.v_set.size() == 15);
  CHECK(oracle::girth(p.graph) == 10u);
}

TEST_CASE("pendants: d = 4, gamma = 4 gives 26 vertices") {
  const Subdivision k4 = subdivide(complete_graph(4));
  const Gadget g = attach_pendants(k4.graph, k4.u_set, k4.v_set, 4);
  CHECK(g.size() == 4 + 6 + 4 + 12);
  CHECK(g.q_set.size() == 4);
  CHECK(g.r_set.size() == 12);
  for (Vertex v : g.u_set) CHECK(g.graph.degree(v) == 4);
  for (Vertex v : g.v_set) CHECK(g.graph.degree(v) == 4);
  for (Vertex v : g.q_set) CHECK(g.graph.degree(v) == 1);
  CHECK(neighborhood(g.graph, g.u_set) == g.v_set.set_union(g.q_set));
  CHECK(g.h_part().num_vertices() == 10);
  CHECK_THROWS_AS(attach_pendants(k4.graph, k4.v_set, k4.u_set, 4), PreconditionViolated);
}

TEST_CASE("matching size k") {
  CHECK(matching_size_k(4, 4) == 24);
  CHECK(matching_size_k(2, 3) == 4);
  CHECK(matching_size_k(16, 4) == 96);
  CHECK_THROWS_AS(matching_size_k(1, 6), NonIntegral);  // 110 / 4
}

TEST_CASE("spaced matchings") {
  const Graph c10 = cycle_graph(10);
  const SpacedMatching m = spaced_matching(c10, 2, 3);
  REQUIRE(m.edges.size() == 2);
  REQUIRE(m.min_distance.has_value());
  CHECK(*m.min_distance >= 3);
  CHECK(matching_min_distance(c10, m.edges) == m.min_distance);

  const SpacedMatching one = spaced_matching(petersen_graph(), 1, 1);
  CHECK(one.edges.size() == 1);
  CHECK_FALSE(one.min_distance.has_value());

  CHECK_THROWS_AS(spaced_matching(c10, 3, 1), HostTooSmall);

  const Graph host = random_regular(2048, 4, 5);
  const SpacedMatching big = spaced_matching(host, 72, 5);
  CHECK(big.edges.size() == 72);
  CHECK(big.enforced_spacing >= big.guaranteed_spacing);
  CHECK(big.min_distance.value_or(0) >= big.enforced_spacing);
}

TEST_CASE("splice on a 4096-vertex host, d = 4, gamma = 4") {
  const Graph host = random_regular(4096, 4, 1);
  const PipelineResult pr = construct_pipeline(4, host, 4, 1);
  CHECK(oracle::is_regular(pr.splice.graph, 4));
  CHECK(pr.splice.graph.num_vertices() == 4096 + 26);
  CHECK(pr.splice.planted_u.size() == 4);
  const auto gu = oracle::neighborhood(pr.splice.graph,
                                       {pr.splice.planted_u.begin(), pr.splice.planted_u.end()});
  CHECK(2 * gu.size() == 5 * 4);
  for (const auto& [pendant, ends] : pr.splice.attachment) CHECK(ends.size() == 3);
}

TEST_CASE("pipeline, d = 4, n = 4096, gamma = 16") {
  const Graph host = random_regular(4096, 4, 2);
  const PipelineResult pr = construct_pipeline(4, host, 16, 7);
  const Splice& s = pr.splice;
  CHECK(pr.report.gadget_size == 16 + 24 + 16 + 48);
  CHECK(s.graph.num_vertices() == 4096 + 104);
  CHECK(oracle::is_regular(s.graph, 4));
  const auto gu = oracle::neighborhood(s.graph, {s.planted_u.begin(), s.planted_u.end()});
  CHECK(gu.size() * 2 == 5 * s.planted_u.size());
  REQUIRE(pr.report.structural_girth_bound.has_value());
  CHECK(oracle::girth(s.graph).value() >= *pr.report.structural_girth_bound);

  SUBCASE("sidecar round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "hgr_test_gadget";
    std::filesystem::create_directories(dir);
    write_splice(s, 7, dir / "g.el", dir / "g.json");
    const Splice back = read_splice(dir / "g.el", dir / "g.json");
    CHECK(back.graph == s.graph);
    CHECK(back.planted_u == s.planted_u);
    CHECK(back.attachment == s.attachment);
    CHECK(back.matching == s.matching);
    CHECK(back.gamma == 16);
  }
}

TEST_CASE("pipeline rejects bad parameters") {
  const Graph host = random_regular(512, 4, 1);
  CHECK_THROWS_AS(construct_pipeline(4, host, 5, 1), InvalidParams);   // odd gamma
  CHECK_THROWS_AS(construct_pipeline(4, host, 10, 1), InvalidParams);  // 1000 > 512
  CHECK_THROWS_AS(construct_pipeline(6, host, 6, 1), InvalidParams);   // wrong degree
  CHECK_THROWS_AS(construct_pipeline(3, random_regular(512, 3, 1), 4, 1), InvalidParams);
}

TEST_CASE("build_gadget matches the pipeline's gadget") {
  const Graph host = random_regular(1000, 6, 3);
  const PipelineResult pr = construct_pipeline(6, host, 6, 9);
  CHECK(build_gadget(6, 6, 9).graph == pr.gadget.graph);
}
