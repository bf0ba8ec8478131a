#include "hgr/gadget.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <unordered_map>

#include "hgr/edge_list.hpp"
#include "hgr/errors.hpp"
#include "hgr/hosts.hpp"
#include "hgr/rng.hpp"
#include "json.hpp"

namespace hgr {

std::size_t moore_bound_vertices(std::size_t degree, std::size_t girth) {
  if (girth <= 2) return degree + 1;
  const std::size_t radius = girth / 2;
  const std::size_t cap = std::numeric_limits<std::size_t>::max() / 4;
  std::size_t geometric = 0, power = 1;  // sum_{i < r} (degree-1)^i, capped
  const std::size_t terms = girth % 2 == 1 ? (girth - 1) / 2 : radius;
  for (std::size_t i = 0; i < terms; ++i) {
    geometric = std::min(cap, geometric + power);
    power = std::min(cap, power * (degree - 1));
  }
  if (girth % 2 == 1) return std::min(cap, 1 + degree * geometric);
  return std::min(cap, 2 * geometric);
}

namespace {

std::uint64_t edge_key(Vertex a, Vertex b) {
  const Edge e = Edge::make(a, b);
  return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
}

// Local search state: for every edge, the length of its shortest cycle capped
// at the target. The deficit sums target - length over all edges, and is 0
// exactly when the girth reaches the target.
class GirthSearch {
 public:
  GirthSearch(GraphBuilder builder, std::size_t target)
      : b_(std::move(builder)), target_(target), dist_(b_.num_vertices(), -1) {
    for (std::size_t u = 0; u < b_.num_vertices(); ++u) {
      for (Vertex v : b_.neighbors(static_cast<Vertex>(u))) {
        if (u < v) set_length(static_cast<Vertex>(u), v, cycle_through(static_cast<Vertex>(u), v));
      }
    }
  }

  std::size_t deficit() const { return deficit_; }
  const GraphBuilder& builder() const { return b_; }
  bool has_bad_edges() const { return !bad_.empty(); }

  /// Tries one double-edge switch; keeps it when the deficit does not grow.
  /// Returns the signed deficit change of the kept move, or nullopt if rejected.
  std::optional<long> try_move(Rng& rng) {
    const Edge e1 = bad_[rng.below(bad_.size())];
    const Vertex c = static_cast<Vertex>(rng.below(b_.num_vertices()));
    const auto& nb = b_.neighbors(c);
    const Vertex e = nb[rng.below(nb.size())];
    Vertex a = e1.u, bb = e1.v;
    if (rng.below(2) == 1) std::swap(a, bb);
    if (a == c || a == e || bb == c || bb == e) return std::nullopt;
    if (b_.has_edge(a, c) || b_.has_edge(bb, e)) return std::nullopt;

    std::vector<Vertex> touched{a, bb, c, e};
    auto region = nearby_edges(touched);
    b_.remove_edge(a, bb);
    b_.remove_edge(c, e);
    b_.add_edge(a, c);
    b_.add_edge(bb, e);
    for (const Edge& f : nearby_edges(touched)) region.push_back(f);
    std::sort(region.begin(), region.end());
    region.erase(std::unique(region.begin(), region.end()), region.end());

    const std::size_t before = deficit_;
    std::vector<std::pair<Edge, std::size_t>> saved;
    for (const Edge& f : region) {
      auto it = length_.find(edge_key(f.u, f.v));
      saved.emplace_back(f, it == length_.end() ? 0 : it->second);
    }
    for (const Edge& f : region) {
      if (b_.has_edge(f.u, f.v)) {
        set_length(f.u, f.v, cycle_through(f.u, f.v));
      } else {
        erase_length(f.u, f.v);
      }
    }
    if (deficit_ <= before) return static_cast<long>(deficit_) - static_cast<long>(before);

    b_.remove_edge(a, c);
    b_.remove_edge(bb, e);
    b_.add_edge(a, bb);
    b_.add_edge(c, e);
    for (const auto& [f, len] : saved) {
      if (len == 0) {
        erase_length(f.u, f.v);
      } else {
        set_length(f.u, f.v, len);
      }
    }
    return std::nullopt;
  }

 private:
  // Shortest cycle through edge (u, v), capped at target.
  std::size_t cycle_through(Vertex u, Vertex v) {
    const int limit = static_cast<int>(target_) - 2;
    if (limit < 1) return target_;
    touched_.clear();
    touched_.push_back(u);
    dist_[u] = 0;
    std::size_t result = target_;
    for (std::size_t head = 0; head < touched_.size() && result == target_; ++head) {
      const Vertex x = touched_[head];
      if (dist_[x] >= limit) break;
      for (Vertex y : b_.neighbors(x)) {
        if (x == u && y == v) continue;
        if (dist_[y] >= 0) continue;
        dist_[y] = dist_[x] + 1;
        if (y == v) {
          result = static_cast<std::size_t>(dist_[y]) + 1;
          break;
        }
        touched_.push_back(y);
      }
    }
    for (Vertex x : touched_) dist_[x] = -1;
    dist_[v] = -1;
    return result;
  }

  std::vector<Edge> nearby_edges(const std::vector<Vertex>& seeds) {
    const int radius = static_cast<int>((target_ + 1) / 2);
    touched_.clear();
    for (Vertex s : seeds) {
      if (dist_[s] < 0) {
        dist_[s] = 0;
        touched_.push_back(s);
      }
    }
    std::vector<Edge> out;
    for (std::size_t head = 0; head < touched_.size(); ++head) {
      const Vertex x = touched_[head];
      for (Vertex y : b_.neighbors(x)) {
        out.push_back(Edge::make(x, y));
        if (dist_[y] < 0 && dist_[x] < radius) {
          dist_[y] = dist_[x] + 1;
          touched_.push_back(y);
        }
      }
    }
    for (Vertex x : touched_) dist_[x] = -1;
    return out;
  }

  void set_length(Vertex u, Vertex v, std::size_t len) {
    erase_length(u, v);
    const auto key = edge_key(u, v);
    length_[key] = len;
    deficit_ += target_ - len;
    if (len < target_) {
      bad_pos_[key] = bad_.size();
      bad_.push_back(Edge::make(u, v));
    }
  }

  void erase_length(Vertex u, Vertex v) {
    const auto key = edge_key(u, v);
    auto it = length_.find(key);
    if (it == length_.end()) return;
    deficit_ -= target_ - it->second;
    length_.erase(it);
    auto pos = bad_pos_.find(key);
    if (pos != bad_pos_.end()) {
      const std::size_t i = pos->second;
      bad_pos_.erase(pos);
      if (i + 1 != bad_.size()) {
        bad_[i] = bad_.back();
        bad_pos_[edge_key(bad_[i].u, bad_[i].v)] = i;
      }
      bad_.pop_back();
    }
  }

  GraphBuilder b_;
  std::size_t target_;
  std::size_t deficit_ = 0;
  std::unordered_map<std::uint64_t, std::size_t> length_;
  std::vector<Edge> bad_;
  std::unordered_map<std::uint64_t, std::size_t> bad_pos_;
  std::vector<int> dist_;
  std::vector<Vertex> touched_;
};

void validate_regular_params(std::size_t n, std::size_t degree) {
  if (degree < 3 || degree >= n || (n * degree) % 2 != 0) {
    throw InvalidParams("need degree >= 3, degree < n and n*degree even (n=" + std::to_string(n) +
                        ", degree=" + std::to_string(degree) + ")");
  }
}

// One restart: hill-climb from `start` until the deficit hits 0 or stalls.
GraphBuilder climb(GraphBuilder start, std::size_t target, Rng& rng,
                   const HighGirthOptions& options, std::size_t& accepted) {
  GirthSearch search(std::move(start), target);
  std::size_t best = search.deficit();
  std::size_t stall = 0;
  for (std::size_t move = 0; move < options.moves_per_restart && search.has_bad_edges(); ++move) {
    auto delta = search.try_move(rng);
    if (delta) ++accepted;
    if (search.deficit() < best) {
      best = search.deficit();
      stall = 0;
    } else if (++stall > options.stall_limit) {
      break;
    }
  }
  return search.builder();
}

HighGirthResult search_girth(std::optional<Graph> start, std::size_t n, std::size_t degree,
                             std::size_t target, Rng& rng, const HighGirthOptions& options) {
  HighGirthResult best;
  bool have_best = false;
  for (std::size_t restart = 0; restart < options.max_restarts; ++restart) {
    GraphBuilder initial = (restart == 0 && start) ? GraphBuilder(*start)
                                                   : GraphBuilder(random_regular(n, degree, rng.engine()()));
    std::size_t accepted = 0;
    Graph g = climb(std::move(initial), target, rng, options, accepted).build();
    const auto gg = girth(g);
    const std::size_t value = gg.value_or(std::numeric_limits<std::size_t>::max());
    const std::size_t best_value = best.girth.value_or(std::numeric_limits<std::size_t>::max());
    best.accepted_switches += accepted;
    best.restarts = restart + 1;
    if (!have_best || value > best_value) {
      best.graph = std::move(g);
      best.girth = gg;
      have_best = true;
    }
    if (value >= target) {
      best.reached_target = true;
      break;
    }
  }
  return best;
}

}  // namespace

HighGirthResult high_girth_regular(std::size_t n, std::size_t degree, std::size_t girth_target,
                                   std::uint64_t seed, const HighGirthOptions& options) {
  validate_regular_params(n, degree);
  if (moore_bound_vertices(degree, girth_target) > n) {
    throw InfeasibleTarget("a " + std::to_string(degree) + "-regular graph of girth " +
                           std::to_string(girth_target) + " needs at least " +
                           std::to_string(moore_bound_vertices(degree, girth_target)) +
                           " vertices, have " + std::to_string(n));
  }
  Rng rng(seed);
  return search_girth(std::nullopt, n, degree, girth_target, rng, options);
}

namespace {

// Raises the girth target one step at a time, warm-starting from the last
// success, until the Moore bound or the search budget stops it.
HighGirthResult maximize_girth(std::size_t n, std::size_t degree, std::size_t first_target,
                               std::uint64_t seed, const HighGirthOptions& options) {
  validate_regular_params(n, degree);
  Rng rng(seed);
  std::size_t target = std::max<std::size_t>(3, first_target);
  while (target > 3 && moore_bound_vertices(degree, target) > n) --target;
  HighGirthResult best = search_girth(std::nullopt, n, degree, target, rng, options);
  // Targets above the first are a bonus, so they get a smaller budget.
  HighGirthOptions bonus = options;
  bonus.max_restarts = std::max<std::size_t>(1, options.max_restarts / 10);
  bonus.moves_per_restart = std::max<std::size_t>(1, options.moves_per_restart / 4);
  bonus.stall_limit = std::max<std::size_t>(1, options.stall_limit / 4);
  while (best.reached_target) {
    const std::size_t next = best.girth.value_or(target) + 1;
    if (moore_bound_vertices(degree, next) > n) break;
    HighGirthResult attempt = search_girth(best.graph, n, degree, next, rng, bonus);
    if (!attempt.reached_target) break;
    attempt.accepted_switches += best.accepted_switches;
    best = std::move(attempt);
    target = next;
  }
  return best;
}

}  // namespace

Subdivision subdivide(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const auto edges = g.edges();
  std::vector<Edge> out;
  out.reserve(2 * edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto mid = static_cast<Vertex>(n + i);
    out.push_back({edges[i].u, mid});
    out.push_back({edges[i].v, mid});
  }
  const std::size_t total = n + edges.size();
  return {Graph::from_edges(total, out), VertexSet::range(0, static_cast<Vertex>(n), total),
          VertexSet::range(static_cast<Vertex>(n), static_cast<Vertex>(total), total)};
}

Graph Gadget::h_part() const {
  return induced_subgraph(graph, VertexSet::range(0, static_cast<Vertex>(u_set.size() + v_set.size()),
                                                  graph.num_vertices()));
}

Gadget attach_pendants(const Graph& h, const VertexSet& u_set, const VertexSet& v_set,
                       std::size_t d) {
  if (d < 3) throw InvalidParams("gadget degree must be at least 3");
  if (!is_biregular(h, u_set, v_set, d - 1, 2)) {
    throw PreconditionViolated("H must be (d-1, 2)-biregular on (U, V)");
  }
  const std::size_t gamma = u_set.size();
  const std::size_t nv = v_set.size();
  const std::size_t nq = gamma;
  const std::size_t nr = nv * (d - 2);
  const std::size_t total = gamma + nv + nq + nr;

  std::vector<Vertex> relabel(h.num_vertices());
  for (std::size_t i = 0; i < gamma; ++i) relabel[u_set[i]] = static_cast<Vertex>(i);
  for (std::size_t j = 0; j < nv; ++j) relabel[v_set[j]] = static_cast<Vertex>(gamma + j);

  std::vector<Edge> edges;
  for (const Edge& e : h.edges()) edges.push_back(Edge::make(relabel[e.u], relabel[e.v]));
  const auto q_base = static_cast<Vertex>(gamma + nv);
  for (std::size_t i = 0; i < gamma; ++i) edges.push_back({static_cast<Vertex>(i), q_base + static_cast<Vertex>(i)});
  const auto r_base = static_cast<Vertex>(q_base + nq);
  for (std::size_t j = 0; j < nv; ++j) {
    for (std::size_t t = 0; t < d - 2; ++t) {
      edges.push_back({static_cast<Vertex>(gamma + j), r_base + static_cast<Vertex>(j * (d - 2) + t)});
    }
  }

  Gadget out;
  out.graph = Graph::from_edges(total, edges);
  out.u_set = VertexSet::range(0, static_cast<Vertex>(gamma), total);
  out.v_set = VertexSet::range(static_cast<Vertex>(gamma), q_base, total);
  out.q_set = VertexSet::range(q_base, r_base, total);
  out.r_set = VertexSet::range(r_base, static_cast<Vertex>(total), total);
  out.gamma = gamma;
  out.d = d;
  out.girth_h = girth(h);
  return out;
}

std::size_t matching_size_k(std::size_t gamma, std::size_t d) {
  if (d < 2) throw InvalidParams("d must be at least 2");
  const std::size_t numerator = gamma * (d - 1) * (2 + (d - 1) * (d - 2));
  if (numerator % 4 != 0) {
    throw NonIntegral("gamma (d-1) (2 + (d-1)(d-2)) / 4 is not an integer for gamma=" +
                      std::to_string(gamma) + ", d=" + std::to_string(d));
  }
  return numerator / 4;
}

namespace {

// Greedy pass: scan edges in `order`, keep an edge when both endpoints are at
// distance >= spacing from every kept endpoint.
std::optional<std::vector<Edge>> greedy_spaced(const Graph& g, const std::vector<Edge>& order,
                                               std::size_t k, std::size_t spacing) {
  const int r = static_cast<int>(std::max<std::size_t>(spacing, 1));
  std::vector<int> near(g.num_vertices(), std::numeric_limits<int>::max());
  std::vector<Edge> chosen;
  std::vector<Vertex> frontier, next;
  for (const Edge& e : order) {
    if (chosen.size() == k) break;
    if (near[e.u] < r || near[e.v] < r) continue;
    chosen.push_back(e);
    near[e.u] = near[e.v] = 0;
    frontier = {e.u, e.v};
    for (int depth = 1; depth < r && !frontier.empty(); ++depth) {
      next.clear();
      for (Vertex x : frontier) {
        for (Vertex y : g.neighbors(x)) {
          if (near[y] > depth) {
            near[y] = depth;
            next.push_back(y);
          }
        }
      }
      std::swap(frontier, next);
    }
  }
  if (chosen.size() < k) return std::nullopt;
  return chosen;
}

}  // namespace

std::optional<std::size_t> matching_min_distance(const Graph& g, std::span<const Edge> matching) {
  if (matching.size() <= 1) return std::nullopt;
  const std::size_t n = g.num_vertices();
  std::vector<int> dist(n, -1);
  std::vector<std::size_t> owner(n, 0);
  std::vector<Vertex> queue;
  for (std::size_t i = 0; i < matching.size(); ++i) {
    for (Vertex v : {matching[i].u, matching[i].v}) {
      dist[v] = 0;
      owner[v] = i;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        owner[y] = owner[x];
        queue.push_back(y);
      }
    }
  }
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t x = 0; x < n; ++x) {
    if (dist[x] < 0) continue;
    for (Vertex y : g.neighbors(static_cast<Vertex>(x))) {
      if (owner[y] != owner[x]) best = std::min(best, static_cast<std::size_t>(dist[x] + dist[y] + 1));
    }
    // Two matching edges sharing a vertex cannot happen for a matching; a
    // vertex reached from two groups at equal depth is covered by the edge scan.
  }
  if (best == std::numeric_limits<std::size_t>::max()) return std::nullopt;  // disconnected groups
  return best;
}

SpacedMatching spaced_matching(const Graph& g, std::size_t k, std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  SpacedMatching out;
  if (k == 0) return out;
  if (4 * k > n) {
    throw HostTooSmall("need 4k <= n for a spaced matching (k=" + std::to_string(k) +
                       ", n=" + std::to_string(n) + ")");
  }
  const std::size_t branching = g.max_degree() > 0 ? g.max_degree() - 1 : 0;
  std::size_t guaranteed = 0;
  if (branching <= 1) {
    guaranteed = n / (2 * k);
  } else {
    std::size_t power = branching;
    while (4 * k * power <= n) {
      ++guaranteed;
      power *= branching;
    }
  }
  out.guaranteed_spacing = guaranteed;

  Rng rng(seed);
  std::vector<Edge> order = g.edges();
  rng.shuffle(order);

  std::size_t r = std::max<std::size_t>(guaranteed, 1);
  auto found = greedy_spaced(g, order, k, r);
  while (!found && r > 1) found = greedy_spaced(g, order, k, --r);
  if (!found) throw HostTooSmall("no matching of size " + std::to_string(k) + " found");
  while (r < n) {
    auto wider = greedy_spaced(g, order, k, r + 1);
    if (!wider) break;
    found = std::move(wider);
    ++r;
  }
  out.edges = std::move(*found);
  out.enforced_spacing = r;
  out.min_distance = matching_min_distance(g, out.edges);
  return out;
}

Splice splice(const Graph& host, const Gadget& gadget, std::span<const Edge> matching,
              std::uint64_t seed) {
  const std::size_t n = host.num_vertices();
  const std::size_t d = gadget.d;
  if (host.regular_degree() != d) throw PreconditionViolated("host must be d-regular");
  const std::size_t k = matching_size_k(gadget.gamma, d);
  if (matching.size() != k) {
    throw PreconditionViolated("matching has " + std::to_string(matching.size()) +
                               " edges, need k=" + std::to_string(k));
  }
  std::vector<char> used(n, 0);
  std::vector<Vertex> endpoints;
  for (const Edge& e : matching) {
    if (!host.has_edge(e.u, e.v)) throw PreconditionViolated("matching edge not in host");
    for (Vertex v : {e.u, e.v}) {
      if (used[v]) throw PreconditionViolated("matching edges share a vertex");
      used[v] = 1;
      endpoints.push_back(v);
    }
  }

  GraphBuilder b(host);
  for (const Edge& e : matching) b.remove_edge(e.u, e.v);
  const auto offset = static_cast<Vertex>(n);
  for (std::size_t x = 0; x < gadget.size(); ++x) b.add_vertex();
  for (const Edge& e : gadget.graph.edges()) b.add_edge(offset + e.u, offset + e.v);

  Rng rng(seed);
  rng.shuffle(endpoints);
  Splice out;
  std::size_t next = 0;
  for (const VertexSet* side : {&gadget.q_set, &gadget.r_set}) {
    for (Vertex p : *side) {
      const Vertex pendant = offset + p;
      auto& ends = out.attachment[pendant];
      for (std::size_t t = 0; t + 1 < d; ++t) {
        const Vertex a = endpoints[next++];
        if (!b.add_edge(pendant, a)) throw DegreeViolation("parallel attachment edge");
        ends.push_back(a);
      }
      std::sort(ends.begin(), ends.end());
    }
  }
  out.graph = b.build();
  if (next != endpoints.size() || out.graph.regular_degree() != d) {
    throw DegreeViolation("spliced graph is not " + std::to_string(d) + "-regular");
  }
  const std::size_t total = out.graph.num_vertices();
  auto shift = [&](const VertexSet& s) {
    std::vector<Vertex> m;
    for (Vertex v : s) m.push_back(offset + v);
    return VertexSet(std::move(m), total);
  };
  out.planted_u = shift(gadget.u_set);
  out.v_set = shift(gadget.v_set);
  out.q_set = shift(gadget.q_set);
  out.r_set = shift(gadget.r_set);
  out.matching.assign(matching.begin(), matching.end());
  out.host_n = n;
  out.gamma = gadget.gamma;
  out.d = d;
  out.min_matching_distance = matching_min_distance(host, matching);
  out.girth_h = gadget.girth_h;
  return out;
}

Gadget build_gadget(std::size_t gamma, std::size_t d, std::uint64_t seed,
                    const HighGirthOptions& options, std::optional<std::size_t>* base_girth) {
  if (d < 3) throw InvalidParams("gadget needs d >= 3");
  if (gamma % 2 != 0 || gamma < d) {
    throw InvalidParams("gamma must be even and at least d (gamma=" + std::to_string(gamma) + ")");
  }
  const double log_term = 2.0 * std::log(static_cast<double>(gamma)) / std::log(static_cast<double>(d - 1));
  const auto first_target = static_cast<std::size_t>(std::ceil(log_term / 2.0 - 1e-12));
  HighGirthResult base = maximize_girth(gamma, d - 1, first_target, mix_seed(seed, 1), options);
  if (base_girth) *base_girth = base.girth;
  Subdivision sub = subdivide(base.graph);
  return attach_pendants(sub.graph, sub.u_set, sub.v_set, d);
}

PipelineResult construct_pipeline(std::size_t d, const Graph& host, std::size_t gamma,
                                  std::uint64_t seed, const HighGirthOptions& options) {
  const std::size_t n = host.num_vertices();
  if (d < 4) throw InvalidParams("pipeline needs d >= 4");
  if (host.regular_degree() != d) throw InvalidParams("host is not " + std::to_string(d) + "-regular");
  if (gamma % 2 != 0 || gamma < d) {
    throw InvalidParams("gamma must be even and at least d (gamma=" + std::to_string(gamma) + ")");
  }
  if (gamma * gamma * gamma > n) {
    throw InvalidParams("gamma^3 must not exceed the host size (gamma=" + std::to_string(gamma) +
                        ", n=" + std::to_string(n) + ")");
  }

  const double log_term = 2.0 * std::log(static_cast<double>(gamma)) / std::log(static_cast<double>(d - 1));
  std::optional<std::size_t> base_girth;
  PipelineResult out;
  out.gadget = build_gadget(gamma, d, seed, options, &base_girth);
  const std::size_t k = matching_size_k(gamma, d);
  SpacedMatching m = spaced_matching(host, k, mix_seed(seed, 2));
  out.splice = splice(host, out.gadget, m.edges, mix_seed(seed, 3));

  PipelineReport& r = out.report;
  r.d = d;
  r.gamma = gamma;
  r.host_n = n;
  r.k = k;
  r.girth_h_tilde = base_girth;
  r.girth_h = out.gadget.girth_h;
  r.girth_host = girth(host);
  r.guaranteed_spacing = m.guaranteed_spacing;
  r.enforced_spacing = m.enforced_spacing;
  r.min_matching_distance = m.min_distance;
  r.log_girth_term = log_term;
  const double spacing = m.min_distance ? static_cast<double>(*m.min_distance)
                                        : std::numeric_limits<double>::infinity();
  r.asymptotic_girth_bound = std::min(log_term, spacing);
  {
    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
    const std::size_t gh = r.girth_h.value_or(inf);
    const std::size_t ghost = r.girth_host.value_or(inf);
    const std::size_t sp = m.min_distance.value_or(inf);
    const std::size_t mixed_path = std::min(sp, ghost == inf ? inf : ghost - 1);
    const std::size_t mixed = mixed_path == inf ? inf : mixed_path + 2;
    const std::size_t bound = std::min({gh, ghost, mixed});
    if (bound != inf) r.structural_girth_bound = bound;
  }
  r.gadget_size = out.gadget.size();
  r.pendant_count = out.gadget.q_set.size() + out.gadget.r_set.size();
  return out;
}

void write_splice(const Splice& s, std::uint64_t seed, const std::filesystem::path& edge_list,
                  const std::filesystem::path& sidecar) {
  write_edge_list(edge_list, s.graph);
  nlohmann::json j;
  j["format"] = "hgr-splice/1";
  j["gamma"] = s.gamma;
  j["d"] = s.d;
  j["host_n"] = s.host_n;
  j["n"] = s.graph.num_vertices();
  j["seeds"] = {{"pipeline", seed}};
  auto pairs = nlohmann::json::array();
  for (const Edge& e : s.matching) pairs.push_back({e.u, e.v});
  j["matching"] = pairs;
  auto att = nlohmann::json::array();
  for (const auto& [pendant, ends] : s.attachment) att.push_back({{"pendant", pendant}, {"endpoints", ends}});
  j["attachment"] = att;
  auto members = [](const VertexSet& v) { return std::vector<Vertex>(v.begin(), v.end()); };
  j["planted_u"] = members(s.planted_u);
  j["v_set"] = members(s.v_set);
  j["q_set"] = members(s.q_set);
  j["r_set"] = members(s.r_set);
  j["min_matching_distance"] = s.min_matching_distance ? nlohmann::json(*s.min_matching_distance) : nlohmann::json(nullptr);
  j["girth_h"] = s.girth_h ? nlohmann::json(*s.girth_h) : nlohmann::json(nullptr);
  std::ofstream out(sidecar);
  if (!out) throw FormatError("cannot write " + sidecar.string());
  out << j.dump(2) << '\n';
}

Splice read_splice(const std::filesystem::path& edge_list, const std::filesystem::path& sidecar) {
  Splice s;
  s.graph = read_edge_list(edge_list);
  std::ifstream in(sidecar);
  if (!in) throw FormatError("cannot open " + sidecar.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    if (j.at("format") != "hgr-splice/1") throw FormatError("unknown sidecar format");
    const std::size_t total = s.graph.num_vertices();
    if (j.at("n").get<std::size_t>() != total) throw FormatError("sidecar n does not match edge list");
    s.gamma = j.at("gamma").get<std::size_t>();
    s.d = j.at("d").get<std::size_t>();
    s.host_n = j.at("host_n").get<std::size_t>();
    for (const auto& p : j.at("matching")) s.matching.push_back(Edge::make(p.at(0), p.at(1)));
    for (const auto& a : j.at("attachment")) {
      s.attachment[a.at("pendant").get<Vertex>()] = a.at("endpoints").get<std::vector<Vertex>>();
    }
    s.planted_u = VertexSet(j.at("planted_u").get<std::vector<Vertex>>(), total);
    s.v_set = VertexSet(j.at("v_set").get<std::vector<Vertex>>(), total);
    s.q_set = VertexSet(j.at("q_set").get<std::vector<Vertex>>(), total);
    s.r_set = VertexSet(j.at("r_set").get<std::vector<Vertex>>(), total);
    if (!j.at("min_matching_distance").is_null()) s.min_matching_distance = j["min_matching_distance"].get<std::size_t>();
    if (!j.at("girth_h").is_null()) s.girth_h = j["girth_h"].get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad sidecar: ") + e.what());
  }
  for (const auto& [pendant, ends] : s.attachment) {
    for (Vertex a : ends) {
      if (!s.graph.has_edge(pendant, a)) throw FormatError("attachment edge missing from graph");
    }
  }
  for (const Edge& e : s.matching) {
    if (s.graph.has_edge(e.u, e.v)) throw FormatError("matching edge still present in graph");
  }
  return s;
}

}  // namespace hgr
