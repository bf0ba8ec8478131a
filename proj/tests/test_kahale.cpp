#include "doctest.h"

#include <cmath>
#include <string>

#include "hgr/errors.hpp"
#include "hgr/gadget.hpp"
#include "hgr/hosts.hpp"
#include "hgr/kahale.hpp"
#include "oracles.hpp"

using namespace hgr;

namespace {

// A spliced graph whose ball around U ∪ V stays tree-like for a few layers.
const PipelineResult& tree_like_instance() {
  static const PipelineResult pr = [] {
    const HighGirthResult host = high_girth_regular(1024, 4, 7, 5);
    return construct_pipeline(4, host.graph, 4, 3);
  }();
  return pr;
}

double expected_layer_sum(std::size_t gamma, std::size_t d) {
  const double q = static_cast<double>(d) - 1.0;
  return static_cast<double>(gamma) / q + 2.0 * static_cast<double>(gamma) * (q - 1.0) / q;
}

}  // namespace

TEST_CASE("closed-form entries make every core vertex of U tight") {
  for (std::size_t d : {3u, 4u, 6u, 9u}) {
    const double q = static_cast<double>(d) - 1.0;
    // u in U: d-1 neighbours in V, one child.
    const double as = q * kahale_value_v(d, 0) + kahale_value_u(d, 1);
    CHECK(as == doctest::Approx(2.0 * std::sqrt(q) * kahale_value_u(d, 0)));
    CHECK(kahale_value_u(d, 3) == doctest::Approx(std::pow(q, -1.5)));
  }
}

TEST_CASE("layer sums are constant and match the closed form") {
  const PipelineResult& pr = tree_like_instance();
  const auto r = oracle::girth(pr.splice.graph);
  REQUIRE(r.has_value());
  const std::size_t h_max = *r / 2;
  REQUIRE(h_max >= 2);
  const KahaleVector s = kahale_vector(pr.splice, h_max);
  REQUIRE(s.layer_sums.size() == h_max + 1);
  for (std::size_t h = 1; h <= h_max; ++h) {
    CHECK(s.layer_sums[h] == doctest::Approx(expected_layer_sum(4, 4)).epsilon(1e-12));
  }
}

TEST_CASE("subsolution holds with slack exactly on X_{1,V}") {
  const PipelineResult& pr = tree_like_instance();
  const std::size_t h_max = *oracle::girth(pr.splice.graph) / 2;
  const KahaleVector s = kahale_vector(pr.splice, h_max);
  const SubsolutionReport rep = verify_subsolution(pr.splice.graph, s, 2.0 * std::sqrt(3.0));
  CHECK(rep.passed);
  CHECK(rep.slack_pattern_ok);
  CHECK(rep.violations == 0);
  // |X_{1,V}| = |V| (d-2).
  CHECK(rep.strict_slack == pr.splice.v_set.size() * 2);
  CHECK(rep.min_slack_x1v > 0.0);

  const SubsolutionReport zero = verify_subsolution(pr.splice.graph, s, 0.0);
  CHECK_FALSE(zero.passed);
  CHECK(zero.violations == zero.checked);
}

TEST_CASE("a ball that wraps around is rejected") {
  const Graph host = random_regular(4096, 4, 1);
  const PipelineResult pr = construct_pipeline(4, host, 16, 1);
  CHECK_THROWS_AS(kahale_vector(pr.splice, 10), GirthTooSmall);
}

TEST_CASE("layer mass") {
  const Graph p = petersen_graph();
  const auto layers = distance_layers(p, VertexSet::single(0, 10), 2);
  std::vector<double> indicator(10, 0.0);
  indicator[0] = 2.0;
  LayerMass m = layer_mass(indicator, layers);
  CHECK(m.total == doctest::Approx(4.0));
  CHECK(m.per_layer == std::vector<double>{4.0, 0.0, 0.0});
  const std::vector<double> ones(10, 1.0);
  m = layer_mass(ones, layers);
  CHECK(m.per_layer == std::vector<double>{1.0, 3.0, 6.0});
  CHECK(m.fraction[2] == doctest::Approx(0.6));
}

namespace {

std::vector<double> radial(const Graph& w, const std::function<double(int)>& f) {
  const auto dist = bfs_distances(w, 0);
  std::vector<double> out(w.num_vertices());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = f(dist[v]);
  return out;
}

// The lemma matrix assembled straight from its definition with explicit
// projections, for comparison with the library.
double oracle_min_eigenvalue(const Graph& w, std::size_t h, double mu, double alpha, double beta, double gamma) {
  const auto dist = bfs_distances(w, 0, static_cast<int>(h));
  std::vector<Vertex> ball;
  for (Vertex v = 0; v < w.num_vertices(); ++v) {
    if (dist[v] >= 0) ball.push_back(v);
  }
  const auto n = static_cast<Eigen::Index>(ball.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n), ple = a, ph = a, phm1 = a;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = w.has_edge(ball[i], ball[j]) ? 1.0 : 0.0;
    const int di = dist[ball[i]];
    ple(i, i) = di <= static_cast<int>(h) - 1;
    ph(i, i) = di == static_cast<int>(h);
    phm1(i, i) = di == static_cast<int>(h) - 1;
  }
  const Eigen::MatrixXd b = mu * mu * ple + mu * (gamma - alpha) * ph - mu * beta * phm1 - a * ple * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  return solver.eigenvalues()(0);
}

}  // namespace

TEST_CASE("tree slices: coefficients, semidefiniteness, equality for g = s") {
  for (std::size_t d : {3u, 4u, 5u}) {
    const double q = static_cast<double>(d) - 1.0;
    const double mu = 2.0 * std::sqrt(q);
    for (std::size_t h = 1; h <= 3; ++h) {
      const Graph w = regular_tree_ball(d, h + 1);
      const VertexSet root = VertexSet::single(0, w.num_vertices());
      const auto s = radial(w, [&](int i) { return std::pow(q, -i / 2.0); });
      const LemmaReport rep = kahale_lemma_check(w, root, h, s, mu, s);
      CHECK(rep.gamma == doctest::Approx(std::sqrt(q)));
      CHECK(rep.alpha == doctest::Approx(0.0));
      CHECK(rep.beta == doctest::Approx(h == 1 ? static_cast<double>(d) / std::sqrt(q) : std::sqrt(q)));
      CHECK(rep.psd);
      CHECK(rep.min_eigenvalue ==
            doctest::Approx(oracle_min_eigenvalue(w, h, mu, rep.alpha, rep.beta, rep.gamma)).epsilon(1e-9));
      // The decaying vector is not an eigenvector at the root.
      CHECK_FALSE(rep.g_is_eigen);

      const auto f = radial(w, [&](int i) {
        return (1.0 + (static_cast<double>(d) - 2.0) * i / static_cast<double>(d)) * std::pow(q, -i / 2.0);
      });
      const LemmaReport eq = kahale_lemma_check(w, root, h, f, mu, f);
      CHECK(eq.psd);
      CHECK(eq.g_is_eigen);
      REQUIRE(eq.lhs.has_value());
      CHECK(*eq.lhs == doctest::Approx(*eq.rhs).epsilon(1e-12));
      CHECK(eq.inequality_holds == true);
    }
  }
}

TEST_CASE("lemma preconditions name the failed condition") {
  // Root with two children, one of which has two children and the other one.
  const std::vector<Edge> edges{{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}};
  const Graph w = Graph::from_edges(6, edges);
  const VertexSet root = VertexSet::single(0, 6);
  const std::vector<double> s{1.0, 0.5, 0.5, 0.25, 0.25, 0.25};
  try {
    kahale_lemma_check(w, root, 2, s, 3.0, s);
    FAIL("expected PreconditionViolated");
  } catch (const PreconditionViolated& e) {
    CHECK(std::string(e.what()).find("(1)") != std::string::npos);
  }

  const Graph tree = regular_tree_ball(3, 3);
  const auto flat = radial(tree, [](int) { return 1.0; });
  try {
    kahale_lemma_check(tree, VertexSet::single(0, tree.num_vertices()), 2, flat, 1.0, flat);
    FAIL("expected PreconditionViolated");
  } catch (const PreconditionViolated& e) {
    CHECK(std::string(e.what()).find("(3)") != std::string::npos);
  }

  auto uneven = flat;
  uneven[1] = 2.0;
  try {
    kahale_lemma_check(tree, VertexSet::single(0, tree.num_vertices()), 1, uneven, 10.0, uneven);
    FAIL("expected PreconditionViolated");
  } catch (const PreconditionViolated& e) {
    CHECK(std::string(e.what()).find("(2)") != std::string::npos);
  }
}
