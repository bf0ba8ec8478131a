#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hgr {

using Vertex = std::uint32_t;

/// Undirected edge stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge make(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Sorted, duplicate-free set of vertex indices of a graph with `host_n` vertices.
class VertexSet {
 public:
  VertexSet() = default;
  /// Sorts and deduplicates; throws InvalidGraph if a member is >= host_n.
  VertexSet(std::vector<Vertex> members, std::size_t host_n);

  static VertexSet all(std::size_t n);
  static VertexSet single(Vertex v, std::size_t n);
  static VertexSet range(Vertex first, Vertex last, std::size_t n);  // [first, last)

  std::span<const Vertex> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::size_t host_n() const { return host_n_; }
  bool contains(Vertex v) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  Vertex operator[](std::size_t i) const { return members_[i]; }

  VertexSet set_union(const VertexSet& other) const;
  VertexSet set_difference(const VertexSet& other) const;
  bool is_subset_of(const VertexSet& other) const;
  /// Dense membership mask of length host_n.
  std::vector<char> mask() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
  std::size_t host_n_ = 0;
};

/// Immutable simple undirected graph in compressed adjacency form. Neighbor
/// lists are strictly increasing.
class Graph {
 public:
  Graph() = default;

  /// Throws InvalidGraph on self-loops, duplicate edges or out-of-range ids.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return adjacency_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;
  double average_degree() const;
  /// The common degree if every vertex has it.
  std::optional<std::size_t> regular_degree() const;
  bool has_edge(Vertex u, Vertex v) const;

  /// All edges, sorted lexicographically with u < v.
  std::vector<Edge> edges() const;

  /// Position of v inside neighbors(u); requires has_edge(u, v).
  std::size_t neighbor_index(Vertex u, Vertex v) const;
  std::size_t adjacency_offset(Vertex v) const { return offsets_[v]; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
};

/// Mutable adjacency used by generators and builders. Degrees are small, so
/// neighbor lists are unsorted vectors with linear lookup.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n = 0) : adjacency_(n) {}
  explicit GraphBuilder(const Graph& g);

  std::size_t num_vertices() const { return adjacency_.size(); }
  Vertex add_vertex();
  /// Returns false (and changes nothing) for loops or existing edges.
  bool add_edge(Vertex u, Vertex v);
  bool remove_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }

  Graph build() const;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Vertices grouped by BFS distance from a base set.
struct LayerDecomposition {
  std::vector<VertexSet> layers;
  /// distance[v] for v within the explored ball, -1 elsewhere.
  std::vector<int> distance;

  std::size_t depth() const { return layers.empty() ? 0 : layers.size() - 1; }
  VertexSet ball() const;
};

/// Length of a shortest cycle; nullopt for forests.
std::optional<std::size_t> girth(const Graph& g);

/// Layers 0..h_max of multi-source BFS from `base`. Trailing empty layers are
/// kept so that layers.size() == h_max + 1.
LayerDecomposition distance_layers(const Graph& g, const VertexSet& base, std::size_t h_max);

/// Single-source BFS distances (-1 when unreachable or beyond `limit`).
std::vector<int> bfs_distances(const Graph& g, Vertex source, int limit = -1);

/// Γ(S): every vertex adjacent to a member of S. May intersect S.
VertexSet neighborhood(const Graph& g, const VertexSet& s);

/// True iff (side_a, side_b) partition V, every edge crosses, and degrees are
/// deg_a on side_a and deg_b on side_b.
bool is_biregular(const Graph& g, const VertexSet& side_a, const VertexSet& side_b,
                  std::size_t deg_a, std::size_t deg_b);

/// Number of edges with both endpoints in S.
std::size_t internal_edges(const Graph& g, const VertexSet& s);

/// Mask of vertices in the 2-core (iteratively strip vertices of degree <= 1).
std::vector<char> two_core_mask(const Graph& g);

/// Subgraph induced by `keep`, relabelled to 0..|keep|-1 in increasing order.
Graph induced_subgraph(const Graph& g, const VertexSet& keep);

bool is_connected(const Graph& g);

/// Two-colouring if the graph is bipartite.
std::optional<std::vector<int>> bipartition(const Graph& g);

}  // namespace hgr
