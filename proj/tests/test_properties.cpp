// Property tests over seeded random instances. Every case prints its seed on
// failure so it can be replayed on its own.
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "hgr/expansion.hpp"
#include "hgr/gadget.hpp"
#include "hgr/hosts.hpp"
#include "hgr/kahale.hpp"
#include "hgr/linkage.hpp"
#include "hgr/rng.hpp"
#include "hgr/spectral.hpp"
#include "oracles.hpp"

using namespace hgr;

namespace {

// Erdos-Renyi style graph with n vertices and edge probability p.
Graph random_simple_graph(Rng& rng, std::size_t n, double p) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.uniform01() < p) edges.push_back({u, v});
    }
  }
  return Graph::from_edges(n, edges);
}

Graph random_regular_graph(Rng& rng, std::size_t n_min, std::size_t n_max, std::size_t d_min, std::size_t d_max) {
  const std::size_t d = d_min + rng.below(d_max - d_min + 1);
  std::size_t n = n_min + rng.below(n_max - n_min + 1);
  n = std::max(n, d + 1);
  if ((n * d) % 2 != 0) ++n;
  return random_regular(n, d, rng.below(1u << 30));
}

VertexSet random_subset(Rng& rng, std::size_t n, std::size_t max_size) {
  std::vector<Vertex> members;
  const std::size_t size = 1 + rng.below(max_size);
  for (std::size_t i = 0; i < size; ++i) members.push_back(static_cast<Vertex>(rng.below(n)));
  return VertexSet(members, n);
}

template <class Body>
void for_seeds(std::uint64_t base, int cases, Body body) {
  for (int i = 0; i < cases; ++i) {
    const std::uint64_t seed = mix_seed(base, static_cast<std::uint64_t>(i));
    INFO("seed = " << seed);
    Rng rng(seed);
    body(rng);
  }
}

}  // namespace

TEST_CASE("property: girth and neighbourhoods agree with the oracles") {
  for_seeds(1, 40, [](Rng& rng) {
    const Graph g = random_simple_graph(rng, 5 + rng.below(25), 0.05 + 0.3 * rng.uniform01());
    CHECK(girth(g) == oracle::girth(g));
    const VertexSet s = random_subset(rng, g.num_vertices(), 6);
    const std::vector<Vertex> members(s.begin(), s.end());
    CHECK(neighborhood(g, s) == VertexSet(oracle::neighborhood(g, members), g.num_vertices()));
  });
}

TEST_CASE("property: neighbourhoods are monotone and bounded by d|S|") {
  for_seeds(2, 30, [](Rng& rng) {
    const Graph g = random_regular_graph(rng, 20, 80, 3, 6);
    const VertexSet s = random_subset(rng, g.num_vertices(), 8);
    const VertexSet t = s.set_union(random_subset(rng, g.num_vertices(), 8));
    CHECK(neighborhood(g, s).is_subset_of(neighborhood(g, t)));
    const ExpansionReport r = vertex_expansion(g, s);
    CHECK(r.neighborhood_size <= g.regular_degree().value() * s.size());
  });
}

TEST_CASE("property: quadratic form equals explicit matrix products") {
  for_seeds(3, 25, [](Rng& rng) {
    const Graph g = random_simple_graph(rng, 4 + rng.below(6), 0.5);
    const auto edges = g.edges();
    if (edges.empty()) return;
    const Edge e = edges[rng.below(edges.size())];
    const std::size_t k = 1 + rng.below(2), ell = 1 + rng.below(3);
    CHECK(quadratic_form(g, e.u, e.v, k, ell) == oracle::quadratic_form(g, e.u, e.v, k, ell));
    CHECK(quadratic_form(g, e.v, e.u, k, ell) == oracle::quadratic_form(g, e.v, e.u, k, ell));
  });
}

TEST_CASE("property: reversal linkages equal the quadratic form") {
  for_seeds(4, 25, [](Rng& rng) {
    const Graph g = random_simple_graph(rng, 4 + rng.below(7), 0.45);
    const auto edges = g.edges();
    if (edges.empty()) return;
    const Edge e = edges[rng.below(edges.size())];
    const std::size_t k = 1 + rng.below(2), ell = 1 + rng.below(3);
    LinkageQuery q;
    q.graph = &g;
    q.u = e.v;
    q.v = e.u;
    q.segments = 2 * k;
    q.segment_len = ell + 1;
    q.joints = JointMode::Reversal;
    CHECK(count_linkages_bruteforce(q) == quadratic_form(g, e.v, e.u, k, ell));
  });
}

TEST_CASE("property: Ihara-Bass on random simple graphs") {
  for_seeds(5, 20, [](Rng& rng) {
    const Graph g = random_simple_graph(rng, 4 + rng.below(12), 0.2 + 0.3 * rng.uniform01());
    if (g.num_edges() == 0) return;
    CHECK(ihara_bass_check(g).passed);
  });
}

TEST_CASE("property: nonbacktracking radius, dense and power method") {
  for_seeds(6, 15, [](Rng& rng) {
    const Graph g = random_simple_graph(rng, 6 + rng.below(20), 0.15 + 0.2 * rng.uniform01());
    if (g.num_edges() == 0) return;
    NbOptions dense, power;
    power.mode = NbMode::RadiusOnly;
    CHECK(std::abs(nb_spectrum(g, dense).lambda_max - nb_spectrum(g, power).lambda_max) <= 1e-5);
  });
}

TEST_CASE("property: adjacency spectra are bounded by the degree") {
  for_seeds(7, 15, [](Rng& rng) {
    const Graph g = random_regular_graph(rng, 10, 200, 3, 8);
    AdjacencyOptions o;
    o.mode = SpectrumMode::Dense;
    const SpectrumReport r = adjacency_spectrum(g, o);
    const double d = static_cast<double>(*g.regular_degree());
    CHECK(r.lambda_max == doctest::Approx(d));
    CHECK(r.lambda_min >= -d - 1e-9);
    CHECK(*r.lambda <= d + 1e-9);
  });
}

TEST_CASE("property: subdivision doubles the girth") {
  for_seeds(8, 15, [](Rng& rng) {
    const Graph g = random_regular_graph(rng, 8, 40, 3, 5);
    const Subdivision s = subdivide(g);
    CHECK(oracle::girth(s.graph) == 2 * oracle::girth(g).value());
    CHECK(is_biregular(s.graph, s.u_set, s.v_set, *g.regular_degree(), 2));
  });
}

TEST_CASE("property: the pipeline yields d-regular graphs with Psi(U) = (d+1)/2") {
  for_seeds(9, 10, [](Rng& rng) {
    const std::size_t d = 4 + rng.below(3);
    std::size_t gamma = d + (d % 2) + 2 * rng.below(3);
    const std::size_t k = matching_size_k(gamma, d);
    std::size_t n = std::max(gamma * gamma * gamma, 8 * k) + rng.below(500);
    if ((n * d) % 2 != 0) ++n;
    const std::uint64_t seed = rng.below(1000);
    const Graph host = random_regular(n, d, seed);
    const PipelineResult pr = construct_pipeline(d, host, gamma, seed);
    const Splice& s = pr.splice;
    CHECK(oracle::is_regular(s.graph, d));
    CHECK(s.graph.num_vertices() == n + pr.gadget.size());
    const auto gu = oracle::neighborhood(s.graph, {s.planted_u.begin(), s.planted_u.end()});
    CHECK(2 * gu.size() == (d + 1) * s.planted_u.size());
    CHECK(oracle::girth(s.graph).value() >= pr.report.structural_girth_bound.value());
    CHECK(construct_pipeline(d, host, gamma, seed).splice.graph == s.graph);
  });
}

TEST_CASE("property: X truncations stay below the Ramanujan bounds") {
  for_seeds(10, 8, [](Rng& rng) {
    const std::size_t d = 4 + rng.below(3);
    const std::size_t gamma = d + (d % 2) + 2 * rng.below(4);
    const Gadget gadget = build_gadget(gamma, d, rng.below(1000));
    const XRadiusReport r = verify_x_radius(gadget, rng.below(3));
    CHECK(r.adjacency_passed);
    CHECK(r.nb_passed);
  });
}

TEST_CASE("property: boundary identity and H(S) edge counts") {
  for_seeds(11, 30, [](Rng& rng) {
    const Graph g = random_regular_graph(rng, 30, 150, 3, 7);
    const VertexSet s = random_subset(rng, g.num_vertices(), 12);
    const HsGraph h = build_hs(g, s);
    std::size_t weighted = 0, expected_edges = internal_edges(g, s);
    for (std::size_t i = 0; i < h.n_i.size(); ++i) {
      weighted += i * h.n_i[i];
      if (i >= 2) expected_edges += (i - 1) * h.n_i[i];
    }
    CHECK(weighted == *g.regular_degree() * s.size() - 2 * internal_edges(g, s));
    CHECK(h.counted_edges == expected_edges);
    CHECK(h.graph.num_edges() + h.duplicates_skipped == expected_edges);
  });
}

TEST_CASE("property: expander mixing holds with the exact lambda") {
  for_seeds(12, 8, [](Rng& rng) {
    const Graph g = random_regular_graph(rng, 20, 300, 3, 7);
    AdjacencyOptions o;
    o.mode = SpectrumMode::Dense;
    const double lambda = *adjacency_spectrum(g, o).lambda;
    CHECK(expander_mixing_audit(g, lambda, 200, rng.below(1000)).violations == 0);
  });
}

TEST_CASE("property: Moore bound on random regular graphs") {
  for_seeds(13, 10, [](Rng& rng) {
    const Graph g = random_regular_graph(rng, 10, 400, 3, 6);
    CHECK(moore_bound_check(g).passed);
  });
}
