#pragma once
// Independent reference implementations. They share nothing with the library
// beyond the Graph container and are written for clarity, not speed.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "hgr/graph.hpp"

namespace oracle {

using hgr::Graph;
using hgr::Vertex;

// Girth by deleting each edge in turn and measuring the detour.
inline std::optional<std::size_t> girth(const Graph& g) {
  std::optional<std::size_t> best;
  const std::size_t n = g.num_vertices();
  for (const auto& e : g.edges()) {
    std::vector<int> dist(n, -1);
    std::deque<Vertex> queue{e.u};
    dist[e.u] = 0;
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      for (Vertex y : g.neighbors(x)) {
        if ((x == e.u && y == e.v) || (x == e.v && y == e.u)) continue;
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
    if (dist[e.v] >= 0) {
      const std::size_t len = static_cast<std::size_t>(dist[e.v]) + 1;
      if (!best || len < *best) best = len;
    }
  }
  return best;
}

// Gamma(S) by scanning every vertex.
inline std::vector<Vertex> neighborhood(const Graph& g, const std::vector<Vertex>& s) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    for (Vertex x : s) {
      if (g.has_edge(v, x)) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

inline Eigen::MatrixXd adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

// Directed edges in lexicographic order of (tail, head).
inline std::vector<std::pair<Vertex, Vertex>> darts(const Graph& g) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (const auto& e : g.edges()) {
    out.emplace_back(e.u, e.v);
    out.emplace_back(e.v, e.u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t dart_index(const std::vector<std::pair<Vertex, Vertex>>& d, Vertex u, Vertex v) {
  return static_cast<std::size_t>(std::lower_bound(d.begin(), d.end(), std::make_pair(u, v)) - d.begin());
}

// B[(u,v),(w,x)] = 1 iff v = w and x != u, by a double loop over darts.
inline std::vector<std::vector<std::uint64_t>> nonbacktracking(const Graph& g) {
  const auto d = darts(g);
  std::vector<std::vector<std::uint64_t>> b(d.size(), std::vector<std::uint64_t>(d.size(), 0));
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (d[i].second == d[j].first && d[j].second != d[i].first) b[i][j] = 1;
    }
  }
  return b;
}

using IntMatrix = std::vector<std::vector<std::uint64_t>>;

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

inline IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t(a.size(), std::vector<std::uint64_t>(a.size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

inline IntMatrix identity(std::size_t n) {
  IntMatrix id(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

inline IntMatrix power(const IntMatrix& a, std::size_t e) {
  IntMatrix r = identity(a.size());
  for (std::size_t i = 0; i < e; ++i) r = multiply(r, a);
  return r;
}

// <1_uv, (B^l (B^T)^l)^k 1_uv> by explicit matrix products.
inline std::uint64_t quadratic_form(const Graph& g, Vertex u, Vertex v, std::size_t k, std::size_t ell) {
  const IntMatrix b = nonbacktracking(g);
  const IntMatrix block = multiply(power(b, ell), power(transpose(b), ell));
  const IntMatrix m = power(block, k);
  const auto d = darts(g);
  const std::size_t i = dart_index(d, u, v);
  return m[i][i];
}

// Eigenvalues of B via a general dense eigensolver on the explicit matrix.
inline std::vector<std::complex<double>> nonbacktracking_eigenvalues(const Graph& g) {
  const IntMatrix b = nonbacktracking(g);
  const auto n = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = static_cast<double>(b[i][j]);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

// det(I - tB) and (1 - t^2)^{m-n} det(I - tA + t^2 (D - I)) at a real t.
inline std::pair<double, double> ihara_sides(const Graph& g, double t) {
  const IntMatrix b = nonbacktracking(g);
  const auto nb = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(nb, nb);
  for (Eigen::Index i = 0; i < nb; ++i) {
    for (Eigen::Index j = 0; j < nb; ++j) lhs(i, j) -= t * static_cast<double>(b[i][j]);
  }
  const Eigen::MatrixXd a = adjacency(g);
  const auto n = a.rows();
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Identity(n, n) - t * a;
  for (Eigen::Index v = 0; v < n; ++v) rhs(v, v) += t * t * (static_cast<double>(g.degree(static_cast<Vertex>(v))) - 1.0);
  const double m = static_cast<double>(g.num_edges()), nv = static_cast<double>(n);
  return {lhs.determinant(), std::pow(1.0 - t * t, m - nv) * rhs.determinant()};
}

// min over nonempty S with |S| <= max_size of |Gamma(S)| / |S|, by bitmask.
inline double min_expansion(const Graph& g, std::size_t max_size) {
  const std::size_t n = g.num_vertices();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size > max_size) continue;
    std::uint32_t gamma = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (!(mask >> v & 1u)) continue;
      for (Vertex w : g.neighbors(v)) gamma |= 1u << w;
    }
    best = std::min(best, static_cast<double>(__builtin_popcount(gamma)) / static_cast<double>(size));
  }
  return best;
}

inline bool is_regular(const Graph& g, std::size_t d) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) != d) return false;
  }
  return true;
}

}  // namespace oracle
