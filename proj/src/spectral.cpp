#include "hgr/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "hgr/errors.hpp"
#include "hgr/lanczos.hpp"

namespace hgr {

namespace {

Eigen::MatrixXd dense_adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

SymmetricOperator adjacency_operator(const Graph& g) {
  return [&g](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      double acc = 0.0;
      for (Vertex w : g.neighbors(static_cast<Vertex>(v))) acc += x(w);
      y(static_cast<Eigen::Index>(v)) = acc;
    }
  };
}

void fill_lambda(SpectrumReport& r) {
  const auto& ev = r.eigenvalues;
  if (ev.size() >= 2) r.lambda = std::max(ev[ev.size() - 2], -ev.front());
}

}  // namespace

SpectrumReport adjacency_spectrum(const Graph& g, const AdjacencyOptions& options) {
  const std::size_t n = g.num_vertices();
  SpectrumReport r;
  if (n == 0) {
    r.method = "dense";
    return r;
  }
  const double scale = std::max<double>(1.0, static_cast<double>(g.max_degree()));
  if (options.mode == SpectrumMode::Dense) {
    if (n > options.dense_cap) {
      throw SizeExceeded("dense eigensolve limited to " + std::to_string(options.dense_cap) +
                         " vertices, graph has " + std::to_string(n));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_adjacency(g));
    if (solver.info() != Eigen::Success) throw ConvergenceFailure("dense symmetric eigensolver failed");
    const auto op = adjacency_operator(g);
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
      const Eigen::VectorXd v = solver.eigenvectors().col(i);
      op(v, y);
      r.max_residual = std::max(r.max_residual, (y - solver.eigenvalues()(i) * v).norm());
      r.eigenvalues.push_back(solver.eigenvalues()(i));
    }
    r.method = "dense";
    r.lambda_max = r.eigenvalues.back();
    r.lambda_min = r.eigenvalues.front();
    fill_lambda(r);
    if (r.max_residual > 1e-9 * scale) {
      throw ConvergenceFailure("dense eigenpair residual " + std::to_string(r.max_residual) +
                               " above 1e-9 d");
    }
    return r;
  }

  if (n < 3) {
    AdjacencyOptions dense = options;
    dense.mode = SpectrumMode::Dense;
    return adjacency_spectrum(g, dense);
  }
  const auto op = adjacency_operator(g);
  LanczosOptions lo;
  lo.tolerance = options.extremal_tolerance * scale;
  lo.seed = options.seed;
  const bool regular = g.regular_degree().has_value();

  lo.largest = true;
  double top, second;
  if (regular) {
    top = static_cast<double>(*g.regular_degree());
    lo.deflate_ones = true;
    auto res = lanczos_extremal(op, n, lo);
    second = res.values[0];
    r.max_residual = std::max(r.max_residual, res.residuals[0]);
    r.iterations += res.iterations;
  } else {
    lo.num_values = 2;
    auto res = lanczos_extremal(op, n, lo);
    top = res.values[0];
    second = res.values[1];
    r.max_residual = std::max({r.max_residual, res.residuals[0], res.residuals[1]});
    r.iterations += res.iterations;
    lo.num_values = 1;
  }
  lo.largest = false;
  lo.deflate_ones = false;
  auto low = lanczos_extremal(op, n, lo);
  r.max_residual = std::max(r.max_residual, low.residuals[0]);
  r.iterations += low.iterations;

  r.eigenvalues = {low.values[0], second, top};
  r.lambda_max = top;
  r.lambda_min = low.values[0];
  r.lambda = std::max(second, -low.values[0]);
  r.method = "lanczos";
  return r;
}

DirectedEdgeSpace::DirectedEdgeSpace(const Graph& g) : graph_(&g) {
  const std::size_t size = 2 * g.num_edges();
  tail_.resize(size);
  head_.resize(size);
  reverse_.resize(size);
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    const std::size_t base = g.adjacency_offset(static_cast<Vertex>(u));
    const auto nb = g.neighbors(static_cast<Vertex>(u));
    for (std::size_t j = 0; j < nb.size(); ++j) {
      tail_[base + j] = static_cast<Vertex>(u);
      head_[base + j] = nb[j];
    }
  }
  for (std::size_t e = 0; e < size; ++e) reverse_[e] = index(head_[e], tail_[e]);
}

std::size_t DirectedEdgeSpace::index(Vertex u, Vertex v) const {
  if (!graph_->has_edge(u, v)) {
    throw InvalidParams("(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
  }
  return graph_->adjacency_offset(u) + graph_->neighbor_index(u, v);
}

std::vector<std::size_t> NonbacktrackingOperator::row(std::size_t e) const {
  const Graph& g = space_.graph();
  const Vertex u = space_.tail(e), v = space_.head(e);
  std::vector<std::size_t> out;
  const std::size_t base = g.adjacency_offset(v);
  const auto nb = g.neighbors(v);
  for (std::size_t j = 0; j < nb.size(); ++j) {
    if (nb[j] != u) out.push_back(base + j);
  }
  return out;
}

namespace {

std::vector<std::complex<double>> dense_nb_eigenvalues(const Graph& g, std::size_t cap) {
  const NonbacktrackingOperator b(g);
  const std::size_t dim = b.dimension();
  if (dim > cap) {
    throw SizeExceeded("dense nonbacktracking eigensolve limited to 2m <= " + std::to_string(cap) +
                       ", have " + std::to_string(dim));
  }
  std::vector<std::complex<double>> out;
  if (dim == 0) return out;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t e = 0; e < dim; ++e) {
    for (std::size_t f : b.row(e)) m(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(f)) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("nonsymmetric eigensolver failed");
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

void sort_by_modulus(std::vector<std::complex<double>>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

// Perron root of B on a graph whose 2-core is all of it, via power iteration
// on B + I. The shift makes the Perron root strictly dominant even when B has
// other eigenvalues on the same circle.
double nb_radius_power(const Graph& core, double rel_tol, std::size_t max_iterations,
                       std::size_t& iterations) {
  const NonbacktrackingOperator b(core);
  const std::size_t dim = b.dimension();
  std::vector<double> x(dim, 1.0 / std::sqrt(static_cast<double>(dim))), y(dim);
  double log_norm = 0.0;  // log ||(B+I)^t x0||
  std::vector<double> history{0.0};
  double previous_rate = -1.0;
  std::size_t window = 1;
  for (std::size_t t = 1; t <= max_iterations; ++t) {
    b.apply(x, y);
    double norm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      y[i] += x[i];
      norm += y[i] * y[i];
    }
    norm = std::sqrt(norm);
    log_norm += std::log(norm);
    for (std::size_t i = 0; i < dim; ++i) x[i] = y[i] / norm;
    history.push_back(log_norm);
    if (t == 2 * window) {
      // Growth rate over (window, 2 window].
      const double rate = std::exp((history[t] - history[window]) / static_cast<double>(window)) - 1.0;
      if (previous_rate >= 0.0 && std::abs(rate - previous_rate) <= 0.1 * rel_tol * std::max(rate, 1.0)) {
        iterations = t;
        // Refine with the last single-step ratio, which converges fastest.
        return norm - 1.0;
      }
      previous_rate = rate;
      window = t;
    }
  }
  iterations = max_iterations;
  throw ConvergenceFailure("nonbacktracking power iteration did not stabilise in " +
                           std::to_string(max_iterations) + " steps");
}

}  // namespace

SpectrumReport nb_spectrum(const Graph& g, const NbOptions& options) {
  SpectrumReport r;
  if (options.mode == NbMode::Dense) {
    r.complex_eigenvalues = dense_nb_eigenvalues(g, options.dense_cap);
    sort_by_modulus(r.complex_eigenvalues);
    r.lambda_max = r.complex_eigenvalues.empty() ? 0.0 : std::abs(r.complex_eigenvalues.front());
    r.method = "dense";
    return r;
  }
  r.method = "power";
  const auto mask = two_core_mask(g);
  std::vector<Vertex> keep;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v]) keep.push_back(static_cast<Vertex>(v));
  }
  if (keep.empty()) {
    r.lambda_max = 0.0;  // B is nilpotent
    return r;
  }
  const Graph core = induced_subgraph(g, VertexSet(keep, g.num_vertices()));
  r.lambda_max = nb_radius_power(core, options.relative_tolerance, options.max_iterations, r.iterations);
  return r;
}

MultisetMatch match_multisets(std::vector<std::complex<double>> left,
                              std::vector<std::complex<double>> right, double tol) {
  MultisetMatch out;
  out.left_size = left.size();
  out.right_size = right.size();
  if (left.size() != right.size()) return out;
  const std::size_t n = left.size();
  std::vector<char> used_l(n, 0), used_r(n, 0);
  if (n <= 1500) {
    // Global greedy: closest pairs first.
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    pairs.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(std::abs(left[i] - right[j]), i, j);
    }
    std::sort(pairs.begin(), pairs.end());
    std::size_t matched = 0;
    for (const auto& [dist, i, j] : pairs) {
      if (used_l[i] || used_r[j]) continue;
      used_l[i] = used_r[j] = 1;
      out.max_distance = std::max(out.max_distance, dist);
      if (++matched == n) break;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = n;
      double best_dist = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (used_r[j]) continue;
        const double dist = std::abs(left[i] - right[j]);
        if (best == n || dist < best_dist) {
          best = j;
          best_dist = dist;
        }
      }
      used_r[best] = 1;
      out.max_distance = std::max(out.max_distance, best_dist);
    }
  }
  out.matched = out.max_distance <= tol;
  if (out.matched) return out;

  // Single-linkage clusters over the union; side 0 is left, side 1 right.
  const double radius = std::sqrt(tol);
  std::vector<std::complex<double>> all(left);
  all.insert(all.end(), right.begin(), right.end());
  std::vector<std::size_t> parent(all.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (std::abs(all[i] - all[j]) <= radius) parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::pair<std::complex<double>, long>> sums[2];
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto& slot = sums[i < n ? 0 : 1][find(i)];
    slot.first += all[i];
    slot.second += 1;
  }
  if (sums[0].size() != sums[1].size()) return out;
  double worst = 0.0;
  for (const auto& [root, lhs] : sums[0]) {
    auto it = sums[1].find(root);
    if (it == sums[1].end() || it->second.second != lhs.second) return out;
    worst = std::max(worst, std::abs(lhs.first - it->second.first) / static_cast<double>(lhs.second));
  }
  out.cluster_distance = worst;
  out.matched = worst <= tol;
  return out;
}

IharaBassReport ihara_bass_check(const Graph& g, double tol, std::size_t dense_cap) {
  IharaBassReport rep;
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  rep.n = n;
  rep.m = m;
  rep.degree = g.regular_degree();
  if (2 * m > dense_cap || 2 * n > dense_cap) {
    throw SizeExceeded("Ihara-Bass check needs 2m and 2n at most " + std::to_string(dense_cap));
  }

  auto left = dense_nb_eigenvalues(g, dense_cap);
  const std::size_t pad_left = n > m ? n - m : 0;
  const std::size_t pad_right = m > n ? m - n : 0;
  for (std::size_t i = 0; i < pad_left; ++i) {
    left.emplace_back(1.0, 0.0);
    left.emplace_back(-1.0, 0.0);
  }

  // Linearisation of t^2 I - t A + (D - I): [[A, I - D], [I, 0]].
  const auto N = static_cast<Eigen::Index>(n);
  std::vector<std::complex<double>> pencil;
  if (n > 0) {
    Eigen::MatrixXd lin = Eigen::MatrixXd::Zero(2 * N, 2 * N);
    lin.topLeftCorner(N, N) = dense_adjacency(g);
    for (Eigen::Index v = 0; v < N; ++v) {
      lin(v, N + v) = 1.0 - static_cast<double>(g.degree(static_cast<Vertex>(v)));
      lin(N + v, v) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(lin, false);
    if (solver.info() != Eigen::Success) throw ConvergenceFailure("pencil eigensolve failed");
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) pencil.push_back(solver.eigenvalues()(i));
  }
  for (std::size_t i = 0; i < pad_right; ++i) {
    pencil.emplace_back(1.0, 0.0);
    pencil.emplace_back(-1.0, 0.0);
  }
  rep.pencil = match_multisets(left, pencil, tol);
  rep.passed = rep.pencil.matched;

  if (rep.degree && n > 0) {
    const double dm1 = static_cast<double>(*rep.degree) - 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> adj(dense_adjacency(g), Eigen::EigenvaluesOnly);
    std::vector<std::complex<double>> roots;
    for (Eigen::Index i = 0; i < N; ++i) {
      const std::complex<double> mu(adj.eigenvalues()(i), 0.0);
      const std::complex<double> disc = std::sqrt(mu * mu - 4.0 * dm1);
      roots.push_back((mu + disc) / 2.0);
      roots.push_back((mu - disc) / 2.0);
    }
    for (std::size_t i = 0; i < pad_right; ++i) {
      roots.emplace_back(1.0, 0.0);
      roots.emplace_back(-1.0, 0.0);
    }
    rep.regular = match_multisets(left, roots, tol);
    rep.passed = rep.passed && rep.regular->matched;
  }
  return rep;
}

double corollary_nb_to_adj(double mu, std::size_t d) {
  if (d < 2) throw DomainError("degree must be at least 2");
  const double dm1 = static_cast<double>(d) - 1.0;
  const double disc = mu * mu - 4.0 * dm1;
  if (!(disc > 0.0)) {
    std::ostringstream msg;
    msg << "mu^2 = " << mu * mu << " does not exceed 4(d-1) = " << 4.0 * dm1;
    throw DomainError(msg.str());
  }
  const double root = std::sqrt(disc);
  const double lambda = mu >= 0.0 ? (mu + root) / 2.0 : (mu - root) / 2.0;
  if (!(std::abs(lambda) > std::sqrt(dm1))) {
    throw DomainError("root does not exceed sqrt(d-1) in modulus");
  }
  return lambda;
}

XTruncation truncate_x(const Graph& h, const VertexSet& u_set, const VertexSet& v_set,
                       std::size_t d, std::size_t depth) {
  if (d < 3) throw InvalidParams("truncate_x needs d >= 3");
  if (u_set.size() + v_set.size() != h.num_vertices()) {
    throw InvalidParams("U and V must cover H");
  }
  const std::size_t hn = h.num_vertices();
  std::vector<Vertex> relabel(hn);
  for (std::size_t i = 0; i < u_set.size(); ++i) relabel[u_set[i]] = static_cast<Vertex>(i);
  for (std::size_t j = 0; j < v_set.size(); ++j) relabel[v_set[j]] = static_cast<Vertex>(u_set.size() + j);

  std::vector<Edge> edges;
  for (const Edge& e : h.edges()) edges.push_back(Edge::make(relabel[e.u], relabel[e.v]));
  std::vector<std::size_t> level(hn, 0);
  std::vector<Vertex> frontier(hn);
  std::iota(frontier.begin(), frontier.end(), 0);
  std::size_t next_id = hn;
  for (std::size_t lvl = 1; lvl <= depth; ++lvl) {
    std::vector<Vertex> grown;
    for (Vertex parent : frontier) {
      std::size_t children = d - 1;
      if (lvl == 1) children = parent < u_set.size() ? 1 : d - 2;
      for (std::size_t c = 0; c < children; ++c) {
        const auto child = static_cast<Vertex>(next_id++);
        edges.push_back({parent, child});
        level.push_back(lvl);
        grown.push_back(child);
      }
    }
    frontier = std::move(grown);
  }
  XTruncation out;
  out.graph = Graph::from_edges(next_id, edges);
  out.u_set = VertexSet::range(0, static_cast<Vertex>(u_set.size()), next_id);
  out.v_set = VertexSet::range(static_cast<Vertex>(u_set.size()), static_cast<Vertex>(hn), next_id);
  out.depth = depth;
  out.d = d;
  out.level = std::move(level);
  return out;
}

XTruncation truncate_x(const Gadget& gadget, std::size_t depth) {
  const Graph h = gadget.h_part();
  const std::size_t hn = h.num_vertices();
  return truncate_x(h, VertexSet::range(0, static_cast<Vertex>(gadget.gamma), hn),
                    VertexSet::range(static_cast<Vertex>(gadget.gamma), static_cast<Vertex>(hn), hn),
                    gadget.d, depth);
}

std::pair<double, double> adjacency_radius(const Graph& g, std::size_t dense_cap, std::string* method) {
  if (g.num_vertices() <= dense_cap) {
    AdjacencyOptions o;
    o.dense_cap = dense_cap;
    const auto r = adjacency_spectrum(g, o);
    if (method) *method = "dense";
    const double rho = std::max(r.lambda_max, -r.lambda_min);
    return {rho, rho + r.max_residual};
  }
  LanczosOptions lo;
  lo.tolerance = 1e-10 * std::max<double>(1.0, static_cast<double>(g.max_degree()));
  lo.max_iterations = 100000;
  const auto res = lanczos_extremal(adjacency_operator(g), g.num_vertices(), lo);
  if (method) *method = "lanczos";
  // For a nonnegative matrix the largest eigenvalue is the spectral radius.
  return {res.values[0], res.values[0] + res.residuals[0]};
}

XRadiusReport verify_x_radius(const Graph& truncation, std::size_t d, double tol, double nb_tol) {
  XRadiusReport r;
  r.vertices = truncation.num_vertices();
  const auto [rho, upper] = adjacency_radius(truncation, 2048, &r.method);
  const double dm1 = static_cast<double>(d) - 1.0;
  r.lambda_max = rho;
  r.lambda_upper = upper;
  r.adjacency_bound = 2.0 * std::sqrt(dm1);
  r.adjacency_margin = r.adjacency_bound - upper;
  r.adjacency_passed = upper <= r.adjacency_bound + tol;
  NbOptions nb;
  nb.mode = NbMode::RadiusOnly;
  r.nb_radius = nb_spectrum(truncation, nb).lambda_max;
  r.nb_bound = std::sqrt(dm1);
  r.nb_margin = r.nb_bound - r.nb_radius;
  r.nb_passed = r.nb_radius <= r.nb_bound + nb_tol;
  return r;
}

XRadiusReport verify_x_radius(const Gadget& gadget, std::size_t depth, double tol, double nb_tol) {
  const XTruncation t = truncate_x(gadget, depth);
  XRadiusReport r = verify_x_radius(t.graph, gadget.d, tol, nb_tol);
  r.depth = depth;
  return r;
}

}  // namespace hgr
