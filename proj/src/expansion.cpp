#include "hgr/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hgr/errors.hpp"
#include "hgr/rng.hpp"

namespace hgr {

ExpansionReport vertex_expansion(const Graph& g, const VertexSet& s) {
  if (s.empty()) throw InvalidParams("vertex expansion of the empty set");
  const VertexSet gamma = neighborhood(g, s);
  ExpansionReport r;
  r.set_size = s.size();
  r.neighborhood_size = gamma.size();
  r.boundary = gamma.set_difference(s).size();
  r.internal_edges = internal_edges(g, s);
  r.psi = static_cast<double>(gamma.size()) / static_cast<double>(s.size());
  r.witness = s;
  r.mode = "exact";
  return r;
}

namespace {

// |Γ(S)| maintained incrementally under single-vertex insertions and removals.
class NeighborhoodCounter {
 public:
  explicit NeighborhoodCounter(const Graph& g) : g_(g), count_(g.num_vertices(), 0), member_(g.num_vertices(), 0) {}

  void add(Vertex v) {
    member_[v] = 1;
    members_.push_back(v);
    for (Vertex w : g_.neighbors(v)) {
      if (count_[w]++ == 0) ++gamma_;
    }
  }
  void remove(Vertex v) {
    member_[v] = 0;
    members_.erase(std::find(members_.begin(), members_.end(), v));
    for (Vertex w : g_.neighbors(v)) {
      if (--count_[w] == 0) --gamma_;
    }
  }
  void clear() {
    while (!members_.empty()) remove(members_.back());
  }
  double psi() const { return static_cast<double>(gamma_) / static_cast<double>(members_.size()); }
  std::size_t size() const { return members_.size(); }
  bool contains(Vertex v) const { return member_[v] != 0; }
  const std::vector<Vertex>& members() const { return members_; }
  /// Vertices of Γ(S) outside S.
  std::vector<Vertex> outer() const {
    std::vector<Vertex> out;
    for (Vertex v : members_) {
      for (Vertex w : g_.neighbors(v)) {
        if (!member_[w]) out.push_back(w);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  const Graph& g_;
  std::vector<std::uint32_t> count_;
  std::vector<char> member_;
  std::vector<Vertex> members_;
  std::size_t gamma_ = 0;
};

struct Best {
  double psi = std::numeric_limits<double>::infinity();
  std::vector<Vertex> set;

  void offer(const NeighborhoodCounter& c) {
    if (c.size() > 0 && c.psi() < psi - 1e-12) {
      psi = c.psi();
      set = c.members();
    }
  }
};

void exhaustive(NeighborhoodCounter& c, std::size_t n, Vertex next, std::size_t max_size, Best& best) {
  for (Vertex v = next; v < n; ++v) {
    c.add(v);
    best.offer(c);
    if (c.size() < max_size) exhaustive(c, n, v + 1, max_size, best);
    c.remove(v);
  }
}

// Best-improvement descent over single insertions and removals.
void descend(NeighborhoodCounter& c, std::size_t max_size, Best& best) {
  for (int round = 0; round < 200; ++round) {
    double current = c.psi();
    std::optional<std::pair<bool, Vertex>> move;  // (insert?, vertex)
    if (c.size() < max_size) {
      for (Vertex w : c.outer()) {
        c.add(w);
        if (c.psi() < current - 1e-12) {
          current = c.psi();
          move = std::make_pair(true, w);
        }
        c.remove(w);
      }
    }
    if (c.size() > 1) {
      const std::vector<Vertex> members = c.members();
      for (Vertex w : members) {
        c.remove(w);
        if (c.psi() < current - 1e-12) {
          current = c.psi();
          move = std::make_pair(false, w);
        }
        c.add(w);
      }
    }
    if (!move) break;
    if (move->first) {
      c.add(move->second);
    } else {
      c.remove(move->second);
    }
    best.offer(c);
  }
}

std::vector<Vertex> random_connected_set(const Graph& g, std::size_t size, Rng& rng) {
  const std::size_t n = g.num_vertices();
  std::vector<char> in(n, 0);
  std::vector<Vertex> set{static_cast<Vertex>(rng.below(n))};
  in[set[0]] = 1;
  std::vector<Vertex> frontier;
  for (Vertex w : g.neighbors(set[0])) frontier.push_back(w);
  while (set.size() < size && !frontier.empty()) {
    const std::size_t i = rng.below(frontier.size());
    const Vertex v = frontier[i];
    frontier[i] = frontier.back();
    frontier.pop_back();
    if (in[v]) continue;
    in[v] = 1;
    set.push_back(v);
    for (Vertex w : g.neighbors(v)) {
      if (!in[w]) frontier.push_back(w);
    }
  }
  return set;
}

std::vector<Vertex> random_uniform_set(std::size_t n, std::size_t size, Rng& rng) {
  std::vector<Vertex> set;
  std::vector<char> in(n, 0);
  while (set.size() < size) {
    const auto v = static_cast<Vertex>(rng.below(n));
    if (!in[v]) {
      in[v] = 1;
      set.push_back(v);
    }
  }
  return set;
}

double log_binomial_sum(std::size_t n, std::size_t k) {
  double total = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    total += std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0));
  }
  return total;
}

}  // namespace

ExpansionReport min_vertex_expansion(const Graph& g, std::size_t max_size,
                                     const MinExpansionOptions& options) {
  const std::size_t n = g.num_vertices();
  if (n == 0 || max_size == 0) throw InvalidParams("need a nonempty graph and max_size >= 1");
  max_size = std::min(max_size, n);
  NeighborhoodCounter c(g);
  Best best;
  ExpansionReport r;
  if (options.mode == SearchMode::Exhaustive) {
    if (log_binomial_sum(n, max_size) > static_cast<double>(options.exhaustive_limit)) {
      throw SizeExceeded("exhaustive search over sets of size <= " + std::to_string(max_size) +
                         " in " + std::to_string(n) + " vertices is too large");
    }
    exhaustive(c, n, 0, max_size, best);
    r = vertex_expansion(g, VertexSet(best.set, n));
    r.mode = "exhaustive";
    return r;
  }
  Rng rng(options.seed);
  auto run_from = [&](const std::vector<Vertex>& start) {
    for (Vertex v : start) c.add(v);
    best.offer(c);
    descend(c, max_size, best);
    c.clear();
  };
  for (const VertexSet& s : options.seeds) {
    if (!s.empty() && s.size() <= max_size) run_from({s.begin(), s.end()});
  }
  for (std::size_t t = 0; t < options.trials; ++t) {
    const std::size_t size = 1 + rng.below(max_size);
    run_from(t % 2 == 0 ? random_connected_set(g, size, rng) : random_uniform_set(n, size, rng));
  }
  r = vertex_expansion(g, VertexSet(best.set, n));
  r.mode = "sampled";
  return r;
}

MixingReport expander_mixing_check(const Graph& g, double lambda, const VertexSet& s,
                                   const VertexSet& t) {
  const auto d = g.regular_degree();
  if (!d) throw InvalidParams("expander mixing check needs a regular graph");
  const auto in_t = t.mask();
  MixingReport r;
  for (Vertex x : s) {
    for (Vertex y : g.neighbors(x)) r.e_st += static_cast<std::uint64_t>(in_t[y]);
  }
  const double ss = static_cast<double>(s.size()), ts = static_cast<double>(t.size());
  r.expected = static_cast<double>(*d) * ss * ts / static_cast<double>(g.num_vertices());
  r.deviation = std::abs(static_cast<double>(r.e_st) - r.expected);
  r.bound = lambda * std::sqrt(ss * ts);
  r.slack = r.bound - r.deviation;
  r.holds = r.slack >= -1e-9 * std::max(1.0, r.bound);
  return r;
}

MixingAudit expander_mixing_audit(const Graph& g, double lambda, std::size_t trials,
                                  std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  Rng rng(seed);
  MixingAudit a;
  a.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trials; ++i) {
    const auto s = random_uniform_set(n, 1 + rng.below(n), rng);
    const auto t = random_uniform_set(n, 1 + rng.below(n), rng);
    const auto r = expander_mixing_check(g, lambda, VertexSet(s, n), VertexSet(t, n));
    ++a.trials;
    if (!r.holds) ++a.violations;
    a.min_slack = std::min(a.min_slack, r.slack);
  }
  return a;
}

HsGraph build_hs(const Graph& g, const VertexSet& s) {
  const std::size_t n = g.num_vertices();
  std::vector<std::int64_t> local(n, -1);
  for (std::size_t i = 0; i < s.size(); ++i) local[s[i]] = static_cast<std::int64_t>(i);
  HsGraph out;
  out.n_i.assign(g.max_degree() + 1, 0);
  GraphBuilder b(s.size());
  for (Vertex x : s) {
    for (Vertex y : g.neighbors(x)) {
      if (local[y] >= 0 && x < y) {
        b.add_edge(static_cast<Vertex>(local[x]), static_cast<Vertex>(local[y]));
        ++out.induced_edges;
      }
    }
  }
  out.counted_edges = out.induced_edges;
  const VertexSet outer = neighborhood(g, s).set_difference(s);
  out.boundary = outer.size();
  for (Vertex w : outer) {
    std::vector<Vertex> inside;
    for (Vertex y : g.neighbors(w)) {
      if (local[y] >= 0) inside.push_back(static_cast<Vertex>(local[y]));
    }
    ++out.n_i[inside.size()];
    for (std::size_t j = 1; j < inside.size(); ++j) {
      ++out.counted_edges;
      if (b.add_edge(inside[j - 1], inside[j])) {
        ++out.path_edges;
      } else {
        ++out.duplicates_skipped;
      }
    }
  }
  out.graph = b.build();
  return out;
}

MooreReport moore_bound_check(const Graph& g) {
  MooreReport r;
  r.average_degree = g.average_degree();
  if (!(r.average_degree > 2.0)) {
    throw DegenerateDegree("average degree " + std::to_string(r.average_degree) + " is at most 2");
  }
  r.bound = 2.0 * std::log(static_cast<double>(g.num_vertices())) / std::log(r.average_degree - 1.0) + 2.0;
  r.girth = girth(g);
  r.passed = !r.girth || static_cast<double>(*r.girth) <= r.bound + 1e-12;
  return r;
}

double small_set_bound(const BoundParams& p, BoundVariant variant) {
  if (!(p.alpha > 0.0)) throw InvalidParams("alpha must be positive");
  if (p.n == 0 || p.d == 0) throw InvalidParams("n and d must be positive");
  const double d = static_cast<double>(p.d);
  const double ratio = std::isinf(p.alpha) ? 0.0 : p.kappa / p.alpha;
  const double middle = variant == BoundVariant::Derived ? (std::pow(d, 2.0 * ratio) - 1.0) / 2.0
                                                         : std::pow(d, ratio) / 2.0;
  return d - p.lambda - middle - d / std::pow(static_cast<double>(p.n), 1.0 - p.kappa);
}

SmallSetAudit audit_small_sets(const Graph& g, double lambda, double kappa, std::size_t trials,
                               std::uint64_t seed) {
  const auto d = g.regular_degree();
  if (!d || *d < 3) throw InvalidParams("small-set audit needs a d-regular graph with d >= 3");
  const std::size_t n = g.num_vertices();
  SmallSetAudit a;
  a.n = n;
  a.d = *d;
  a.lambda = lambda;
  a.kappa = kappa;
  a.girth = girth(g);
  const double log_n = std::log(static_cast<double>(n)) / std::log(static_cast<double>(*d) - 1.0);
  a.alpha = a.girth ? (static_cast<double>(*a.girth) - 4.0) / (2.0 * log_n)
                    : std::numeric_limits<double>::infinity();
  a.alpha_positive = a.alpha > 0.0;
  a.max_set_size = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), kappa) + 1e-9)));
  BoundParams p{*d, lambda, kappa, a.alpha, n};
  if (a.alpha_positive) {
    a.bound = small_set_bound(p);
    a.stated_bound = small_set_bound(p, BoundVariant::Stated);
  } else {
    a.bound = a.stated_bound = -std::numeric_limits<double>::infinity();
  }
  const std::size_t half_girth = a.girth ? (*a.girth + 1) / 2 : 0;

  Rng rng(seed);
  a.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t size = 1 + rng.below(a.max_set_size);
    const auto members = t % 2 == 0 ? random_connected_set(g, size, rng) : random_uniform_set(n, size, rng);
    const VertexSet s(members, n);
    const HsGraph hs = build_hs(g, s);
    const std::size_t e_s = hs.induced_edges;
    const double ratio = static_cast<double>(hs.boundary) / static_cast<double>(s.size());
    ++a.trials;
    a.min_ratio = std::min(a.min_ratio, ratio);

    std::size_t weighted = 0;
    for (std::size_t i = 0; i < hs.n_i.size(); ++i) weighted += i * hs.n_i[i];
    if (weighted != *d * s.size() - 2 * e_s) ++a.identity_failures;
    const std::size_t stated_count = *d * s.size() - e_s - hs.boundary;
    if (hs.counted_edges != stated_count ||
        hs.induced_edges + hs.path_edges + hs.duplicates_skipped != hs.counted_edges ||
        hs.graph.num_edges() != hs.induced_edges + hs.path_edges) {
      ++a.hs_count_failures;
    }
    if (a.girth) {
      const auto gh = girth(hs.graph);
      if (gh && *gh < half_girth) ++a.hs_girth_failures;
    }
    auto below = [](double value, double bound) {
      return value < bound - 1e-12 * std::max(1.0, std::abs(bound));
    };
    if (a.alpha_positive) {
      if (below(ratio, a.bound)) ++a.violations;
      if (below(ratio, a.stated_bound)) ++a.stated_variant_violations;
      BoundParams own = p;
      own.kappa = std::log(static_cast<double>(s.size())) / std::log(static_cast<double>(n));
      if (below(ratio, small_set_bound(own))) ++a.per_set_kappa_violations;
    }
  }
  a.passed = a.alpha_positive && a.violations == 0 && a.identity_failures == 0 &&
             a.hs_count_failures == 0 && a.hs_girth_failures == 0;
  return a;
}

}  // namespace hgr
