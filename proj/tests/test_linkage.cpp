#include "doctest.h"

#include <cmath>

#include "hgr/errors.hpp"
#include "hgr/gadget.hpp"
#include "hgr/hosts.hpp"
#include "hgr/linkage.hpp"
#include "oracles.hpp"

using namespace hgr;

namespace {

LinkageQuery query(const Graph& g, Vertex u, Vertex v, std::size_t a, std::size_t b, JointMode mode) {
  LinkageQuery q;
  q.graph = &g;
  q.u = u;
  q.v = v;
  q.segments = a;
  q.segment_len = b;
  q.closed = true;
  q.joints = mode;
  return q;
}

}  // namespace

TEST_CASE("brute-force linkage counts on tiny graphs") {
  const Graph p2 = path_graph(2);
  CHECK(count_linkages_bruteforce(query(p2, 0, 1, 2, 1, JointMode::Free)) == 1);
  const Graph p4 = path_graph(4);
  CHECK(count_linkages_bruteforce(query(p4, 0, 1, 1, 5, JointMode::Free)) == 0);
  const Graph c4 = cycle_graph(4);
  CHECK(count_linkages_bruteforce(query(c4, 0, 1, 2, 2, JointMode::Reversal)) == quadratic_form(c4, 0, 1, 1, 1));
  CHECK(count_linkages_bruteforce(query(c4, 0, 1, 2, 3, JointMode::Reversal)) == quadratic_form(c4, 0, 1, 1, 2));
}

TEST_CASE("quadratic form on the star K_{1,3}") {
  const Graph star = star_graph(3);
  CHECK(quadratic_form(star, 1, 0, 1, 1) == 2);
  CHECK(quadratic_form(star, 0, 1, 1, 1) == 0);  // the walk dies at the leaf
  CHECK(quadratic_form(star, 1, 0, 1, 2) == 0);
}

TEST_CASE("quadratic form matches explicit matrix products") {
  for (const Graph& g : {complete_graph(4), cycle_graph(5), petersen_graph(), subdivide(complete_graph(4)).graph,
                         random_regular(8, 3, 2)}) {
    for (const auto& e : g.edges()) {
      for (std::size_t k : {1u, 2u}) {
        for (std::size_t ell : {1u, 2u, 3u}) {
          CHECK(quadratic_form(g, e.u, e.v, k, ell) == oracle::quadratic_form(g, e.u, e.v, k, ell));
          CHECK(quadratic_form(g, e.v, e.u, k, ell) == oracle::quadratic_form(g, e.v, e.u, k, ell));
        }
      }
    }
  }
}

TEST_CASE("free joints count at least the reversal linkages") {
  const Graph g = petersen_graph();
  for (std::size_t ell : {1u, 2u}) {
    LinkageQuery free = query(g, 0, 1, 2, ell + 1, JointMode::Free);
    free.pin_first_step = true;
    CHECK(count_linkages_bruteforce(free) >= quadratic_form(g, 0, 1, 1, ell));
  }
}

TEST_CASE("overflow and budget") {
  const Graph k = complete_graph(20);
  CHECK_THROWS_AS(quadratic_form(k, 0, 1, 12, 12), Overflow);
  const Graph k5 = complete_graph(5);
  LinkageQuery q = query(k5, 0, 1, 4, 4, JointMode::Free);
  q.node_budget = 10;
  CHECK_THROWS_AS(count_linkages_bruteforce(q), BudgetExceeded);
}

TEST_CASE("encoding bound") {
  const EncodingBound b = encoding_bound(1, 1, 4);
  // 2 * 2^2 * 2^8 * 2^2 * sqrt(3)^5 = 8192 * 9 * sqrt(3)
  CHECK(b.value == doctest::Approx(8192.0 * 9.0 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(b.value == doctest::Approx(127700.642).epsilon(1e-7));
  CHECK(std::log(b.value) == doctest::Approx(b.log_value));
  CHECK(b.root == doctest::Approx(std::pow(b.value, 0.25)));
  // The normalised root creeps down towards sqrt(d-1).
  double prev = encoding_bound(2, 10, 4).root;
  for (std::size_t ell : {100u, 1000u, 100000u}) {
    const double r = encoding_bound(2, ell, 4).root;
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev / std::sqrt(3.0) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::isinf(encoding_bound(1000, 1000000, 1000).value));
}

TEST_CASE("trace bound on the d = 4, gamma = 4 truncation") {
  const Gadget gadget = build_gadget(4, 4, 1);
  const TraceBoundReport one = verify_trace_bound(gadget, 4, 1, 1);
  CHECK(one.passed);
  CHECK(one.chain_ok);
  CHECK(one.max_quadratic_form <= 127709);
  CHECK(one.edges_checked > 0);
  const TraceBoundReport two = verify_trace_bound(gadget, 4, 1, 2);
  CHECK(two.passed);
  CHECK(two.ratio < one.ratio);
  CHECK_THROWS_AS(verify_trace_bound(gadget, 2, 1, 2), PreconditionViolated);
}
