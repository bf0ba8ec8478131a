#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hgr/gadget.hpp"
#include "hgr/graph.hpp"

namespace hgr {

inline constexpr std::size_t kDefaultDenseCap = 8192;

enum class SpectrumMode { Dense, Extremal };
enum class NbMode { Dense, RadiusOnly };

struct SpectrumReport {
  /// Adjacency: ascending. Extremal mode only holds the computed end values.
  std::vector<double> eigenvalues;
  /// Nonbacktracking: sorted by decreasing modulus.
  std::vector<std::complex<double>> complex_eigenvalues;
  double lambda_max = 0.0;  // largest eigenvalue (adjacency) or spectral radius (nonbacktracking)
  double lambda_min = 0.0;
  /// max(lambda_2, -lambda_n); unset when the graph has fewer than 2 vertices.
  std::optional<double> lambda;
  std::string method;
  double max_residual = 0.0;
  std::size_t iterations = 0;
};

struct AdjacencyOptions {
  SpectrumMode mode = SpectrumMode::Dense;
  std::size_t dense_cap = kDefaultDenseCap;
  /// Relative to the maximum degree.
  double extremal_tolerance = 1e-7;
  std::uint64_t seed = 1;
};

/// Dense: full eigendecomposition. Extremal: Lanczos for lambda_1, lambda_2
/// (ones deflated when the graph is regular) and lambda_n.
SpectrumReport adjacency_spectrum(const Graph& g, const AdjacencyOptions& options = {});

/// Indexing of the 2m ordered pairs (u, v) with {u, v} an edge. The index of
/// (u, v) is the position of v in the adjacency of u.
class DirectedEdgeSpace {
 public:
  explicit DirectedEdgeSpace(const Graph& g);

  const Graph& graph() const { return *graph_; }
  std::size_t size() const { return tail_.size(); }
  std::size_t index(Vertex u, Vertex v) const;
  Vertex tail(std::size_t e) const { return tail_[e]; }
  Vertex head(std::size_t e) const { return head_[e]; }
  std::size_t reverse(std::size_t e) const { return reverse_[e]; }

 private:
  const Graph* graph_;
  std::vector<Vertex> tail_, head_;
  std::vector<std::size_t> reverse_;
};

/// Sparse 0/1 operator B[(u,v),(w,x)] = 1 iff v = w and u != x.
class NonbacktrackingOperator {
 public:
  explicit NonbacktrackingOperator(const Graph& g) : space_(g) {}

  const DirectedEdgeSpace& space() const { return space_; }
  std::size_t dimension() const { return space_.size(); }

  /// Column indices of the ones in row e.
  std::vector<std::size_t> row(std::size_t e) const;

  /// y = B x.
  template <class In, class Out>
  void apply(const In& x, Out& y) const {
    const Graph& g = space_.graph();
    for (std::size_t e = 0; e < space_.size(); ++e) {
      const Vertex u = space_.tail(e), v = space_.head(e);
      typename Out::value_type acc{};
      const std::size_t base = g.adjacency_offset(v);
      const auto nb = g.neighbors(v);
      for (std::size_t j = 0; j < nb.size(); ++j) {
        if (nb[j] != u) acc += x[base + j];
      }
      y[e] = acc;
    }
  }

  /// y = B^T x.
  template <class In, class Out>
  void apply_transpose(const In& x, Out& y) const {
    const Graph& g = space_.graph();
    for (std::size_t f = 0; f < space_.size(); ++f) {
      const Vertex w = space_.tail(f), target = space_.head(f);
      typename Out::value_type acc{};
      for (Vertex u : g.neighbors(w)) {
        if (u != target) acc += x[space_.index(u, w)];
      }
      y[f] = acc;
    }
  }

 private:
  DirectedEdgeSpace space_;
};

struct NbOptions {
  NbMode mode = NbMode::Dense;
  std::size_t dense_cap = 4096;
  double relative_tolerance = 1e-6;
  std::size_t max_iterations = 200000;
};

/// Dense: every eigenvalue of B. RadiusOnly: spectral radius of B by power
/// iteration on the 2-core.
SpectrumReport nb_spectrum(const Graph& g, const NbOptions& options = {});

struct MultisetMatch {
  bool matched = false;
  double max_distance = 0.0;
  std::size_t left_size = 0;
  std::size_t right_size = 0;
  /// Largest centroid gap over clusters of nearby values. Defective
  /// eigenvalues split by roughly eps^(1/k) under rounding, but the centroid
  /// of the split cluster stays accurate, so a match is also accepted when
  /// every cluster holds equally many values from both sides and the
  /// centroids agree within `tol`.
  double cluster_distance = 0.0;
};

/// Greedy nearest matching of two complex multisets within `tol`, with the
/// cluster fallback described above (cluster linkage radius sqrt(tol)).
MultisetMatch match_multisets(std::vector<std::complex<double>> left,
                              std::vector<std::complex<double>> right, double tol);

struct IharaBassReport {
  bool passed = false;
  /// spec(B) against the eigenvalues of the quadratic pencil (any graph).
  MultisetMatch pencil;
  /// spec(B) against the roots of t^2 - mu t + (d-1) over spec(A) (regular graphs).
  std::optional<MultisetMatch> regular;
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<std::size_t> degree;
};

IharaBassReport ihara_bass_check(const Graph& g, double tol = 1e-6,
                                 std::size_t dense_cap = 4096);

/// The root of t^2 - mu t + (d-1) = 0 with the larger modulus; throws
/// DomainError unless mu^2 > 4(d-1).
double corollary_nb_to_adj(double mu, std::size_t d);

/// Finite piece of the infinite graph X: H with a tree grown from every
/// vertex. U roots get one child, V roots d-2 children, deeper tree vertices
/// d-1 children. Ids: H (U then V, as in the gadget), then tree vertices in
/// breadth-first order.
struct XTruncation {
  Graph graph;
  VertexSet u_set, v_set;
  std::size_t depth = 0;
  std::size_t d = 0;
  /// Distance of every vertex from H.
  std::vector<std::size_t> level;
};

XTruncation truncate_x(const Graph& h, const VertexSet& u_set, const VertexSet& v_set,
                       std::size_t d, std::size_t depth);
XTruncation truncate_x(const Gadget& gadget, std::size_t depth);

struct XRadiusReport {
  std::size_t depth = 0;
  std::size_t vertices = 0;
  double lambda_max = 0.0;
  /// lambda_max plus the residual bound when an iterative solver was used.
  double lambda_upper = 0.0;
  double adjacency_bound = 0.0;  // 2 sqrt(d-1)
  double adjacency_margin = 0.0;
  bool adjacency_passed = false;
  double nb_radius = 0.0;
  double nb_bound = 0.0;  // sqrt(d-1)
  double nb_margin = 0.0;
  bool nb_passed = false;
  std::string method;
};

/// Spectral radius of a graph's adjacency matrix together with an upper
/// estimate; dense below `dense_cap` vertices, Lanczos above.
std::pair<double, double> adjacency_radius(const Graph& g, std::size_t dense_cap = 2048,
                                           std::string* method = nullptr);

XRadiusReport verify_x_radius(const Graph& truncation, std::size_t d, double tol = 1e-9,
                              double nb_tol = 1e-5);
XRadiusReport verify_x_radius(const Gadget& gadget, std::size_t depth, double tol = 1e-9,
                              double nb_tol = 1e-5);

}  // namespace hgr
