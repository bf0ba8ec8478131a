#include "hgr/kahale.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "hgr/errors.hpp"

namespace hgr {

double kahale_value_u(std::size_t d, std::size_t h) {
  return std::pow(static_cast<double>(d) - 1.0, -static_cast<double>(h) / 2.0);
}

double kahale_value_v(std::size_t d, std::size_t h) {
  const double dm1 = static_cast<double>(d) - 1.0;
  const double dm2 = static_cast<double>(d) - 2.0;
  if (h == 0) return 2.0 / std::sqrt(dm1) - std::pow(dm1, -1.5);
  return (2.0 / dm2 - 2.0 / (dm1 * dm2)) * std::pow(dm1, -(static_cast<double>(h) - 1.0) / 2.0);
}

KahaleVector kahale_vector(const Splice& splice, std::size_t h_max) {
  const Graph& g = splice.graph;
  const std::size_t d = splice.d;
  if (d < 3) throw InvalidParams("test vector needs d >= 3");
  const VertexSet x0 = splice.planted_u.set_union(splice.v_set);
  const LayerDecomposition layers = distance_layers(g, x0, h_max + 1);
  const auto u_mask = splice.planted_u.mask();

  KahaleVector out;
  out.h_max = h_max;
  out.d = d;
  out.values.assign(g.num_vertices(), 0.0);
  out.layer.assign(g.num_vertices(), -1);
  out.branch.assign(g.num_vertices(), Branch::Outside);

  auto fail = [](Vertex v, std::size_t h, const std::string& why) {
    throw GirthTooSmall("layer " + std::to_string(h) + " around U ∪ V is not tree-like at vertex " +
                        std::to_string(v) + ": " + why);
  };

  for (Vertex v : layers.layers[0]) {
    out.layer[v] = 0;
    out.branch[v] = Branch::Core;
    std::size_t inside = 0;
    for (Vertex w : g.neighbors(v)) inside += layers.distance[w] == 0;
    const std::size_t expected_outside = u_mask[v] ? 1 : d - 2;
    if (g.degree(v) - inside != expected_outside) fail(v, 0, "unexpected number of outside neighbours");
    out.values[v] = u_mask[v] ? kahale_value_u(d, 0) : kahale_value_v(d, 0);
  }
  for (std::size_t h = 1; h <= h_max; ++h) {
    for (Vertex v : layers.layers[h]) {
      std::size_t parents = 0, same = 0;
      Vertex parent = v;
      for (Vertex w : g.neighbors(v)) {
        const int dw = layers.distance[w];
        if (dw == static_cast<int>(h) - 1) {
          ++parents;
          parent = w;
        } else if (dw == static_cast<int>(h)) {
          ++same;
        }
      }
      if (parents != 1) fail(v, h, std::to_string(parents) + " neighbours one layer closer");
      if (same != 0) fail(v, h, "edge inside the layer");
      out.layer[v] = static_cast<int>(h);
      const Branch from = out.branch[parent];
      out.branch[v] = (from == Branch::Core) ? (u_mask[parent] ? Branch::UBranch : Branch::VBranch) : from;
      out.values[v] = out.branch[v] == Branch::UBranch ? kahale_value_u(d, h) : kahale_value_v(d, h);
    }
  }
  for (std::size_t h = 0; h <= h_max; ++h) {
    double sum = 0.0;
    for (Vertex v : layers.layers[h]) sum += out.values[v] * out.values[v];
    out.layer_sums.push_back(sum);
  }
  return out;
}

SubsolutionReport verify_subsolution(const Graph& g, const KahaleVector& s, double mu) {
  SubsolutionReport r;
  r.mu = mu;
  bool seen_x1v = false;
  for (std::size_t y = 0; y < g.num_vertices(); ++y) {
    const int h = s.layer[y];
    if (h < 0 || h + 1 > static_cast<int>(s.h_max)) continue;
    double as = 0.0;
    for (Vertex w : g.neighbors(static_cast<Vertex>(y))) as += s.values[w];
    const double target = mu * s.values[y];
    const double slack = target - as;
    const double tol = 1e-12 * std::max(1.0, std::abs(target));
    const bool x1v = h == 1 && s.branch[y] == Branch::VBranch;
    ++r.checked;
    if (slack < -tol) {
      ++r.violations;
      r.max_violation = std::max(r.max_violation, -slack);
    }
    if (slack > tol) {
      ++r.strict_slack;
      if (!x1v) ++r.strict_slack_outside_x1v;
    } else if (x1v) {
      ++r.equal_on_x1v;
    }
    if (x1v) {
      r.min_slack_x1v = seen_x1v ? std::min(r.min_slack_x1v, slack) : slack;
      seen_x1v = true;
    }
  }
  r.passed = r.violations == 0 && r.checked > 0;
  r.slack_pattern_ok = seen_x1v && r.strict_slack_outside_x1v == 0 && r.equal_on_x1v == 0;
  return r;
}

LayerMass layer_mass(std::span<const double> vec, const LayerDecomposition& layers) {
  LayerMass out;
  for (double x : vec) out.total += x * x;
  for (const VertexSet& layer : layers.layers) {
    double sum = 0.0;
    for (Vertex v : layer) sum += vec[v] * vec[v];
    out.per_layer.push_back(sum);
    out.fraction.push_back(out.total > 0.0 ? sum / out.total : 0.0);
  }
  return out;
}

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)}); }

// Returns the common value of `values`, or nullopt if they disagree.
std::optional<double> common_value(const std::vector<double>& values, double tol) {
  if (values.empty()) return 0.0;
  for (double v : values) {
    if (!close(v, values.front(), tol)) return std::nullopt;
  }
  return values.front();
}

std::pair<double, double> extreme_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("eigensolve of lemma matrix failed");
  const double lo = solver.eigenvalues()(0);
  const double hi = solver.eigenvalues()(solver.eigenvalues().size() - 1);
  return {lo, std::max(std::abs(lo), std::abs(hi))};
}

}  // namespace

LemmaReport kahale_lemma_check(const Graph& w, const VertexSet& x, std::size_t h,
                               std::span<const double> s, double mu, std::span<const double> g,
                               double tol, std::size_t dense_cap) {
  if (h == 0) throw InvalidParams("h must be positive");
  if (s.size() != w.num_vertices() || g.size() != w.num_vertices()) {
    throw InvalidParams("s and g must have one entry per vertex");
  }
  const LayerDecomposition layers = distance_layers(w, x, h);
  const auto& dist = layers.distance;
  const int hi = static_cast<int>(h);
  const auto& lower = layers.layers[h - 1];
  const auto& upper = layers.layers[h];

  // (1) constant valencies between X_{h-1} and X_h.
  for (int i : {hi - 1, hi}) {
    for (int j : {hi - 1, hi}) {
      std::optional<std::size_t> count;
      for (Vertex v : layers.layers[static_cast<std::size_t>(i)]) {
        std::size_t c = 0;
        for (Vertex u : w.neighbors(v)) c += dist[u] == j;
        if (count && *count != c) {
          throw PreconditionViolated("(1): vertices of layer " + std::to_string(i) +
                                     " have different numbers of neighbours in layer " + std::to_string(j));
        }
        count = c;
      }
    }
  }
  // (2) constant ratio s(u)/s(v) across edges from X_{h-1} to X_h.
  std::optional<std::pair<double, double>> ref;
  for (Vertex u : lower) {
    for (Vertex v : w.neighbors(u)) {
      if (dist[v] != hi) continue;
      if (!ref) {
        ref = std::make_pair(s[u], s[v]);
        continue;
      }
      if (!close(s[u] * ref->second, ref->first * s[v], tol)) {
        throw PreconditionViolated("(2): s(u)/s(v) varies across edges between layers " +
                                   std::to_string(h - 1) + " and " + std::to_string(h));
      }
    }
  }
  // (3) s >= 0 and A s <= mu s on Ball_{h-1}.
  for (std::size_t v = 0; v < w.num_vertices(); ++v) {
    if (dist[v] < 0) continue;
    if (s[v] < 0.0) throw PreconditionViolated("(3): s is negative at vertex " + std::to_string(v));
    if (dist[v] > hi - 1) continue;
    double as = 0.0;
    for (Vertex u : w.neighbors(static_cast<Vertex>(v))) as += s[u];
    if (as > mu * s[v] + tol * std::max(1.0, mu * s[v])) {
      throw PreconditionViolated("(3): (A s)(v) > mu s(v) at vertex " + std::to_string(v));
    }
  }

  // Local indexing of Ball_h.
  std::vector<Vertex> ball;
  std::unordered_map<Vertex, Eigen::Index> local;
  for (const VertexSet& layer : layers.layers) {
    for (Vertex v : layer) {
      local[v] = static_cast<Eigen::Index>(ball.size());
      ball.push_back(v);
    }
  }
  LemmaReport rep;
  rep.ball_size = ball.size();
  if (ball.size() > dense_cap) {
    throw SizeExceeded("ball of " + std::to_string(ball.size()) + " vertices exceeds dense cap");
  }

  // gamma from P_h A_h s, alpha and beta from A_h P_h s.
  std::vector<double> gam, alp, bet;
  for (Vertex v : upper) {
    double ahs = 0.0, inside = 0.0;
    for (Vertex u : w.neighbors(v)) {
      if (dist[u] >= 0) ahs += s[u];
      if (dist[u] == hi) inside += s[u];
    }
    if (s[v] > 0.0) {
      gam.push_back(ahs / s[v]);
      alp.push_back(inside / s[v]);
    } else if (ahs != 0.0 || inside != 0.0) {
      throw PreconditionViolated("(2): s vanishes on layer " + std::to_string(h) + " but A_h s does not");
    }
  }
  for (Vertex u : lower) {
    double down = 0.0;
    for (Vertex v : w.neighbors(u)) {
      if (dist[v] == hi) down += s[v];
    }
    if (s[u] > 0.0) {
      bet.push_back(down / s[u]);
    } else if (down != 0.0) {
      throw PreconditionViolated("(2): s vanishes on layer " + std::to_string(h - 1) + " but not below it");
    }
  }
  const auto gamma_c = common_value(gam, tol), alpha_c = common_value(alp, tol), beta_c = common_value(bet, tol);
  if (!gamma_c || !alpha_c || !beta_c) {
    throw PreconditionViolated("(1)/(2): layer ratios of s are not constant");
  }
  rep.gamma = *gamma_c;
  rep.alpha = *alpha_c;
  rep.beta = *beta_c;

  const auto N = static_cast<Eigen::Index>(ball.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Vertex u : w.neighbors(ball[static_cast<std::size_t>(i)])) {
      auto it = local.find(u);
      if (it != local.end()) a(i, it->second) = 1.0;
    }
  }
  Eigen::VectorXd p_le(N), p_h(N), p_hm1(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    const int dv = dist[ball[static_cast<std::size_t>(i)]];
    p_le(i) = dv <= hi - 1 ? 1.0 : 0.0;
    p_h(i) = dv == hi ? 1.0 : 0.0;
    p_hm1(i) = dv == hi - 1 ? 1.0 : 0.0;
  }
  const Eigen::VectorXd diag = mu * mu * p_le + mu * (rep.gamma - rep.alpha) * p_h - mu * rep.beta * p_hm1;
  Eigen::MatrixXd b = diag.asDiagonal();
  Eigen::MatrixXd alt = b;
  b.noalias() -= a * p_le.asDiagonal() * a;
  alt.noalias() -= a * p_hm1.asDiagonal() * a;
  std::tie(rep.min_eigenvalue, rep.norm) = extreme_eigenvalues(b);
  std::tie(rep.alt_min_eigenvalue, rep.alt_norm) = extreme_eigenvalues(alt);
  rep.psd = rep.min_eigenvalue >= -tol * std::max(rep.norm, 1.0);
  rep.alt_psd = rep.alt_min_eigenvalue >= -tol * std::max(rep.alt_norm, 1.0);

  rep.g_is_eigen = true;
  for (std::size_t v = 0; v < w.num_vertices() && rep.g_is_eigen; ++v) {
    if (dist[v] < 0 || dist[v] > hi - 1) continue;
    double ag = 0.0;
    for (Vertex u : w.neighbors(static_cast<Vertex>(v))) ag += g[u];
    if (!close(std::abs(ag), mu * std::abs(g[v]), tol)) rep.g_is_eigen = false;
  }
  if (rep.g_is_eigen) {
    auto sums = [&](const VertexSet& layer, std::span<const double> vec) {
      double t = 0.0;
      for (Vertex v : layer) t += vec[v] * vec[v];
      return t;
    };
    rep.lhs = sums(upper, g) / sums(upper, s);
    rep.rhs = sums(lower, g) / sums(lower, s);
    rep.inequality_holds = *rep.lhs >= *rep.rhs - tol * std::max(1.0, std::abs(*rep.rhs));
  }
  return rep;
}

}  // namespace hgr
