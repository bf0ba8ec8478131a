#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hgr/gadget.hpp"
#include "hgr/graph.hpp"

namespace hgr {

enum class Branch { Core, UBranch, VBranch, Outside };

/// Test vector on the ball of radius h_max around X0 = U ∪ V in a spliced
/// graph. Entries outside the ball are zero and tagged Outside.
struct KahaleVector {
  std::vector<double> values;
  std::vector<int> layer;       // distance from X0, -1 outside the ball
  std::vector<Branch> branch;
  std::size_t h_max = 0;
  std::size_t d = 0;
  /// Sum of s^2 over each layer 0..h_max.
  std::vector<double> layer_sums;
};

/// Closed-form entries of the test vector.
double kahale_value_u(std::size_t d, std::size_t h);
double kahale_value_v(std::size_t d, std::size_t h);

/// Throws GirthTooSmall when the ball of radius h_max around U ∪ V is not a
/// disjoint union of trees hanging from X0 with the expected branching.
KahaleVector kahale_vector(const Splice& splice, std::size_t h_max);

struct SubsolutionReport {
  bool passed = false;                 // (As)(y) <= mu s(y) on the checked ball
  bool slack_pattern_ok = false;       // strict slack exactly on X_{1,V}
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t strict_slack = 0;        // vertices with positive slack
  std::size_t strict_slack_outside_x1v = 0;
  std::size_t equal_on_x1v = 0;        // X_{1,V} vertices without slack
  double max_violation = 0.0;
  double min_slack_x1v = 0.0;
  double mu = 0.0;
};

/// Checks (A s)(y) <= mu s(y) for every y within distance h_max - 1 of X0 and
/// records where the inequality is strict.
SubsolutionReport verify_subsolution(const Graph& g, const KahaleVector& s, double mu);

struct LayerMass {
  std::vector<double> per_layer;
  double total = 0.0;
  /// Share of each layer in the total.
  std::vector<double> fraction;
};

LayerMass layer_mass(std::span<const double> vec, const LayerDecomposition& layers);

struct LemmaReport {
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  double min_eigenvalue = 0.0;  // of the assembled matrix
  double norm = 0.0;            // its spectral norm
  bool psd = false;
  /// Same matrix with A P_{h-1} A in place of A P_{<=h-1} A.
  double alt_min_eigenvalue = 0.0;
  double alt_norm = 0.0;
  bool alt_psd = false;
  bool g_is_eigen = false;  // |A g| = mu |g| on Ball_{h-1}
  std::optional<double> lhs, rhs;  // both sides of the layer-ratio inequality
  std::optional<bool> inequality_holds;
  std::size_t ball_size = 0;
};

/// Verifies conditions (1) constant valencies between layers h-1 and h,
/// (2) constant s-ratio across their edges and (3) s >= 0, A s <= mu s on
/// Ball_{h-1}(X); throws PreconditionViolated naming the failed condition.
/// Then assembles the matrix on Ball_h(X), tests it for positive
/// semidefiniteness and, when g qualifies, evaluates the layer-ratio
/// inequality.
LemmaReport kahale_lemma_check(const Graph& w, const VertexSet& x, std::size_t h,
                               std::span<const double> s, double mu, std::span<const double> g,
                               double tol = 1e-9, std::size_t dense_cap = 4096);

}  // namespace hgr
