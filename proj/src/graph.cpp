#include "hgr/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "hgr/errors.hpp"

namespace hgr {

VertexSet::VertexSet(std::vector<Vertex> members, std::size_t host_n)
    : members_(std::move(members)), host_n_(host_n) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= host_n_) {
    throw InvalidGraph("vertex " + std::to_string(members_.back()) + " out of range for n=" +
                       std::to_string(host_n_));
  }
}

VertexSet VertexSet::all(std::size_t n) { return range(0, static_cast<Vertex>(n), n); }

VertexSet VertexSet::single(Vertex v, std::size_t n) { return VertexSet({v}, n); }

VertexSet VertexSet::range(Vertex first, Vertex last, std::size_t n) {
  std::vector<Vertex> m(last > first ? last - first : 0);
  std::iota(m.begin(), m.end(), first);
  return VertexSet(std::move(m), n);
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

VertexSet VertexSet::set_union(const VertexSet& other) const {
  std::vector<Vertex> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out));
  return VertexSet(std::move(out), std::max(host_n_, other.host_n_));
}

VertexSet VertexSet::set_difference(const VertexSet& other) const {
  std::vector<Vertex> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out));
  return VertexSet(std::move(out), host_n_);
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

std::vector<char> VertexSet::mask() const {
  std::vector<char> m(host_n_, 0);
  for (Vertex v : members_) m[v] = 1;
  return m;
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw InvalidGraph("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                         ") out of range for n=" + std::to_string(n));
    }
    if (e.u == e.v) throw InvalidGraph("self-loop at vertex " + std::to_string(e.u));
    ++degree[e.u];
    ++degree[e.v];
  }
  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    g.adjacency_[fill[e.u]++] = e.v;
    g.adjacency_[fill[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw InvalidGraph("duplicate edge at vertex " + std::to_string(v));
    }
  }
  return g;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < num_vertices(); ++v) best = std::max(best, degree(static_cast<Vertex>(v)));
  return best;
}

double Graph::average_degree() const {
  return num_vertices() == 0 ? 0.0 : 2.0 * static_cast<double>(num_edges()) / static_cast<double>(num_vertices());
}

std::optional<std::size_t> Graph::regular_degree() const {
  if (num_vertices() == 0) return std::nullopt;
  const std::size_t d = degree(0);
  for (std::size_t v = 1; v < num_vertices(); ++v) {
    if (degree(static_cast<Vertex>(v)) != d) return std::nullopt;
  }
  return d;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= num_vertices() || v >= num_vertices()) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::neighbor_index(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return static_cast<std::size_t>(std::lower_bound(nb.begin(), nb.end(), v) - nb.begin());
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (std::size_t u = 0; u < num_vertices(); ++u) {
    for (Vertex v : neighbors(static_cast<Vertex>(u))) {
      if (u < v) out.push_back({static_cast<Vertex>(u), v});
    }
  }
  return out;
}

GraphBuilder::GraphBuilder(const Graph& g) : adjacency_(g.num_vertices()) {
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    auto nb = g.neighbors(static_cast<Vertex>(v));
    adjacency_[v].assign(nb.begin(), nb.end());
  }
}

Vertex GraphBuilder::add_vertex() {
  adjacency_.emplace_back();
  return static_cast<Vertex>(adjacency_.size() - 1);
}

bool GraphBuilder::has_edge(Vertex u, Vertex v) const {
  const auto& nb = adjacency_[u];
  return std::find(nb.begin(), nb.end(), v) != nb.end();
}

bool GraphBuilder::add_edge(Vertex u, Vertex v) {
  if (u == v || has_edge(u, v)) return false;
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
  return true;
}

bool GraphBuilder::remove_edge(Vertex u, Vertex v) {
  auto drop = [](std::vector<Vertex>& nb, Vertex x) {
    auto it = std::find(nb.begin(), nb.end(), x);
    if (it == nb.end()) return false;
    *it = nb.back();
    nb.pop_back();
    return true;
  };
  if (!drop(adjacency_[u], v)) return false;
  drop(adjacency_[v], u);
  return true;
}

Graph GraphBuilder::build() const {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) edges.push_back({static_cast<Vertex>(u), v});
    }
  }
  return Graph::from_edges(adjacency_.size(), edges);
}

VertexSet LayerDecomposition::ball() const {
  std::vector<Vertex> all;
  for (const auto& layer : layers) all.insert(all.end(), layer.begin(), layer.end());
  return VertexSet(std::move(all), distance.size());
}

std::optional<std::size_t> girth(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<int> dist(n, -1);
  std::vector<Vertex> parent(n, 0);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    queue.clear();
    queue.push_back(static_cast<Vertex>(s));
    dist[s] = 0;
    parent[s] = static_cast<Vertex>(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      // Any cycle found from here on has length >= 2*dist[x]+1.
      if (2 * static_cast<std::size_t>(dist[x]) + 1 >= best) break;
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (y != parent[x]) {
          best = std::min(best, static_cast<std::size_t>(dist[x] + dist[y] + 1));
        }
      }
    }
    for (Vertex v : queue) dist[v] = -1;
    if (best == 3) break;
  }
  if (best == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return best;
}

LayerDecomposition distance_layers(const Graph& g, const VertexSet& base, std::size_t h_max) {
  const std::size_t n = g.num_vertices();
  LayerDecomposition out;
  out.distance.assign(n, -1);
  std::vector<Vertex> frontier(base.begin(), base.end());
  for (Vertex v : frontier) out.distance[v] = 0;
  out.layers.emplace_back(frontier, n);
  for (std::size_t h = 1; h <= h_max; ++h) {
    std::vector<Vertex> next;
    for (Vertex x : frontier) {
      for (Vertex y : g.neighbors(x)) {
        if (out.distance[y] < 0) {
          out.distance[y] = static_cast<int>(h);
          next.push_back(y);
        }
      }
    }
    out.layers.emplace_back(next, n);
    frontier = std::move(next);
  }
  return out;
}

std::vector<int> bfs_distances(const Graph& g, Vertex source, int limit) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    if (limit >= 0 && dist[x] >= limit) continue;
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

VertexSet neighborhood(const Graph& g, const VertexSet& s) {
  std::vector<Vertex> out;
  for (Vertex v : s) {
    auto nb = g.neighbors(v);
    out.insert(out.end(), nb.begin(), nb.end());
  }
  return VertexSet(std::move(out), g.num_vertices());
}

bool is_biregular(const Graph& g, const VertexSet& side_a, const VertexSet& side_b,
                  std::size_t deg_a, std::size_t deg_b) {
  const std::size_t n = g.num_vertices();
  if (side_a.size() + side_b.size() != n) return false;
  std::vector<char> side(n, -1);
  for (Vertex v : side_a) side[v] = 0;
  for (Vertex v : side_b) {
    if (side[v] == 0) return false;
    side[v] = 1;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (side[v] < 0) return false;
    const std::size_t want = side[v] == 0 ? deg_a : deg_b;
    if (g.degree(static_cast<Vertex>(v)) != want) return false;
    for (Vertex w : g.neighbors(static_cast<Vertex>(v))) {
      if (side[w] == side[v]) return false;
    }
  }
  return true;
}

std::size_t internal_edges(const Graph& g, const VertexSet& s) {
  std::size_t twice = 0;
  for (Vertex v : s) {
    for (Vertex w : g.neighbors(v)) twice += s.contains(w) ? 1 : 0;
  }
  return twice / 2;
}

std::vector<char> two_core_mask(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> deg(n);
  std::vector<char> alive(n, 1);
  std::vector<Vertex> stack;
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = g.degree(static_cast<Vertex>(v));
    if (deg[v] <= 1) stack.push_back(static_cast<Vertex>(v));
  }
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (Vertex w : g.neighbors(v)) {
      if (alive[w] && --deg[w] == 1) stack.push_back(w);
    }
  }
  return alive;
}

Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
  std::vector<std::int64_t> index(g.num_vertices(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<std::int64_t>(i);
  std::vector<Edge> edges;
  for (Vertex v : keep) {
    for (Vertex w : g.neighbors(v)) {
      if (v < w && index[w] >= 0) {
        edges.push_back({static_cast<Vertex>(index[v]), static_cast<Vertex>(index[w])});
      }
    }
  }
  return Graph::from_edges(keep.size(), edges);
}

bool is_connected(const Graph& g) {
  if (g.num_vertices() == 0) return true;
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

std::optional<std::vector<int>> bipartition(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<int> colour(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::vector<Vertex> stack{static_cast<Vertex>(s)};
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x)) {
        if (colour[y] < 0) {
          colour[y] = 1 - colour[x];
          stack.push_back(y);
        } else if (colour[y] == colour[x]) {
          return std::nullopt;
        }
      }
    }
  }
  return colour;
}

}  // namespace hgr
