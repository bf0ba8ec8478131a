#include "doctest.h"

#include <cmath>

#include "hgr/errors.hpp"
#include "hgr/hosts.hpp"
#include "hgr/spectral.hpp"
#include "oracles.hpp"

using namespace hgr;

TEST_CASE("number theory helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(legendre_symbol(5, 13) == -1);
  CHECK(legendre_symbol(13, 17) == 1);
  CHECK(legendre_symbol(5, 29) == 1);
  CHECK(legendre_symbol(26, 13) == 0);
}

TEST_CASE("LPS(5,13) is a 6-regular graph on |PSL2(13)| = 1092 vertices") {
  const LpsGraph lps = lps_graph(5, 13);
  CHECK(lps.graph.num_vertices() == 13 * (13 * 13 - 1) / 2);
  CHECK(lps.graph.regular_degree() == 6u);
  CHECK(lps.legendre == -1);
  CHECK(lps.variant == LpsVariant::PslFolded);
  CHECK(is_connected(lps.graph));
  CHECK(girth(lps.graph) == 7u);
  AdjacencyOptions o;
  o.mode = SpectrumMode::Dense;
  const SpectrumReport s = adjacency_spectrum(lps.graph, o);
  CHECK(*s.lambda <= 2.0 * std::sqrt(5.0) + 1e-9);
  CHECK(*s.lambda == doctest::Approx(4.2497).epsilon(1e-4));
}

TEST_CASE("LPS(5,29) is 6-regular on 12180 vertices") {
  const LpsGraph lps = lps_graph(5, 29);
  CHECK(lps.variant == LpsVariant::Psl);
  CHECK(lps.graph.num_vertices() == 12180);
  CHECK(lps.graph.regular_degree() == 6u);
}

TEST_CASE("LPS parameter validation") {
  CHECK_THROWS_AS(lps_graph(3, 13), InvalidParams);   // 3 != 1 mod 4
  CHECK_THROWS_AS(lps_graph(5, 5), InvalidParams);    // not distinct
  CHECK_THROWS_AS(lps_graph(5, 21), InvalidParams);   // 21 not prime
}

TEST_CASE("random regular graphs") {
  const Graph g = random_regular(10, 3, 4);
  CHECK(g.num_vertices() == 10);
  CHECK(oracle::is_regular(g, 3));
  CHECK(random_regular(200, 5, 11) == random_regular(200, 5, 11));
  CHECK_FALSE(random_regular(200, 5, 11) == random_regular(200, 5, 12));
  CHECK_THROWS_AS(random_regular(7, 3, 1), InvalidParams);
  CHECK_THROWS_AS(random_regular(4, 4, 1), InvalidParams);
}

TEST_CASE("host spec dispatch") {
  HostSpec spec;
  spec.kind = HostKind::RandomRegular;
  spec.n = 64;
  spec.d = 4;
  spec.seed = 2;
  CHECK(make_host(spec) == random_regular(64, 4, 2));
  CHECK(spec.degree() == 4);
  spec.kind = HostKind::Lps;
  spec.p = 5;
  spec.q = 13;
  CHECK(spec.degree() == 6);
  spec.q = 15;
  CHECK_THROWS_AS(spec.validate(), InvalidParams);
}

TEST_CASE("named graphs") {
  CHECK(complete_graph(5).num_edges() == 10);
  CHECK(petersen_graph().regular_degree() == 3u);
  CHECK(star_graph(3).num_vertices() == 4);
  const Graph t = regular_tree_ball(3, 3);
  CHECK(t.num_vertices() == 1 + 3 + 6 + 12);
  CHECK(t.degree(0) == 3);
}
