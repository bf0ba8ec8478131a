#include "hgr/hosts.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hgr/errors.hpp"
#include "hgr/rng.hpp"

namespace hgr {

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = static_cast<std::uint64_t>((unsigned __int128)result * base % mod);
    base = static_cast<std::uint64_t>((unsigned __int128)base * base % mod);
    exp >>= 1;
  }
  return result;
}

// Elements of PGL2(F_q) as 2x2 matrices normalised so the first nonzero entry
// (in a, b, c, d order) is 1.
struct Mat {
  std::uint64_t a, b, c, d;
};

class Pgl2 {
 public:
  explicit Pgl2(std::uint64_t q) : q_(q) {}

  std::uint64_t mod(std::int64_t x) const {
    const auto qi = static_cast<std::int64_t>(q_);
    return static_cast<std::uint64_t>(((x % qi) + qi) % qi);
  }
  std::uint64_t inv(std::uint64_t x) const { return pow_mod(x, q_ - 2, q_); }

  Mat normalise(Mat m) const {
    const std::uint64_t lead = m.a != 0 ? m.a : m.b != 0 ? m.b : m.c != 0 ? m.c : m.d;
    const std::uint64_t s = inv(lead);
    return {m.a * s % q_, m.b * s % q_, m.c * s % q_, m.d * s % q_};
  }
  Mat mul(const Mat& x, const Mat& y) const {
    return normalise({(x.a * y.a + x.b * y.c) % q_, (x.a * y.b + x.b * y.d) % q_,
                      (x.c * y.a + x.d * y.c) % q_, (x.c * y.b + x.d * y.d) % q_});
  }
  Mat adjugate(const Mat& x) const {
    // Inverse up to the scalar det, which is invisible in PGL2.
    return normalise({x.d, (q_ - x.b) % q_, (q_ - x.c) % q_, x.a});
  }
  std::uint64_t det(const Mat& x) const { return (x.a * x.d % q_ + q_ - x.b * x.c % q_) % q_; }
  std::uint64_t key(const Mat& x) const { return ((x.a * q_ + x.b) * q_ + x.c) * q_ + x.d; }
  bool is_identity(const Mat& x) const { return x.a == 1 && x.b == 0 && x.c == 0 && x.d == 1; }

 private:
  std::uint64_t q_;
};

std::vector<std::array<std::int64_t, 4>> four_square_solutions(std::int64_t p) {
  std::vector<std::array<std::int64_t, 4>> out;
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= p) ++r;
  for (std::int64_t a0 = 1; a0 <= r; a0 += 2) {
    for (std::int64_t a1 = -r; a1 <= r; ++a1) {
      for (std::int64_t a2 = -r; a2 <= r; ++a2) {
        for (std::int64_t a3 = -r; a3 <= r; ++a3) {
          if ((a1 | a2 | a3) & 1) continue;
          if (a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == p) out.push_back({a0, a1, a2, a3});
        }
      }
    }
  }
  return out;
}

bool same_set(std::vector<std::uint64_t> x, std::vector<std::uint64_t> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

}  // namespace

std::string to_string(LpsVariant v) {
  switch (v) {
    case LpsVariant::Psl: return "PSL";
    case LpsVariant::PslFolded: return "PSL-folded";
    case LpsVariant::PglBipartite: return "PGL-bipartite";
  }
  return "?";
}

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t f = 2; f * f <= x; ++f) {
    if (x % f == 0) return false;
  }
  return true;
}

int legendre_symbol(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

void HostSpec::validate() const {
  if (kind == HostKind::Lps) {
    if (!is_prime(p) || !is_prime(q) || p == q || p % 4 != 1 || q % 4 != 1) {
      throw InvalidParams("LPS requires distinct primes p, q = 1 mod 4 (got p=" + std::to_string(p) +
                          ", q=" + std::to_string(q) + ")");
    }
  } else {
    if (d >= n || (n * d) % 2 != 0) {
      throw InvalidParams("random regular graph requires n*d even and d < n (got n=" +
                          std::to_string(n) + ", d=" + std::to_string(d) + ")");
    }
  }
}

LpsGraph lps_graph(std::uint64_t p, std::uint64_t q) {
  HostSpec{.kind = HostKind::Lps, .p = p, .q = q}.validate();
  if (q > 1000) throw InvalidParams("q too large for desk-scale construction");
  const Pgl2 group(q);

  std::uint64_t iota = 0;  // sqrt(-1) mod q
  for (std::uint64_t x = 1; x < q; ++x) {
    if (x * x % q == q - 1) {
      iota = x;
      break;
    }
  }

  const auto sols = four_square_solutions(static_cast<std::int64_t>(p));
  if (sols.size() != p + 1) throw InvalidParams("unexpected number of four-square solutions");
  std::vector<Mat> gens;
  std::vector<std::uint64_t> gen_keys;
  for (const auto& s : sols) {
    const auto i = static_cast<std::int64_t>(iota);
    Mat m{group.mod(s[0] + i * s[1]), group.mod(s[2] + i * s[3]), group.mod(-s[2] + i * s[3]),
          group.mod(s[0] - i * s[1])};
    m = group.normalise(m);
    gens.push_back(m);
    gen_keys.push_back(group.key(m));
  }
  {
    auto sorted = gen_keys;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidParams("generators collide mod q; q too small relative to p");
    }
  }

  LpsGraph out;
  out.legendre = legendre_symbol(p, q);
  out.variant = LpsVariant::Psl;
  out.group_order = static_cast<std::size_t>(q * (q * q - 1) / 2);
  if (out.legendre == -1) {
    // Look for an involution c outside PSL2 with c S c^-1 = S; then S c lies
    // in PSL2, is closed under inversion, and Cayley(PSL2, S c) is the
    // bipartite graph folded onto one side.
    std::optional<Mat> fold;
    for (std::uint64_t a = 0; a < q && !fold; ++a) {
      for (std::uint64_t b = 0; b < q && !fold; ++b) {
        for (std::uint64_t c = 0; c < q && !fold; ++c) {
          Mat m{a, b, c, (q - a) % q};
          const std::uint64_t det = group.det(m);
          if (det == 0 || legendre_symbol(det, q) != -1) continue;
          m = group.normalise(m);
          const Mat m_inv = group.adjugate(m);
          std::vector<std::uint64_t> conj;
          for (const Mat& g : gens) conj.push_back(group.key(group.mul(group.mul(m, g), m_inv)));
          if (same_set(conj, gen_keys)) fold = m;
        }
      }
    }
    if (fold) {
      out.variant = LpsVariant::PslFolded;
      for (Mat& g : gens) g = group.mul(g, *fold);
      std::vector<std::uint64_t> keys, inv_keys;
      for (const Mat& g : gens) {
        if (group.is_identity(g)) throw InvalidParams("folded generator set contains identity");
        keys.push_back(group.key(g));
        inv_keys.push_back(group.key(group.adjugate(g)));
      }
      if (!same_set(keys, inv_keys)) throw InvalidParams("folded generator set is not symmetric");
    } else {
      out.variant = LpsVariant::PglBipartite;
      out.group_order *= 2;
    }
  }

  // Breadth-first enumeration of the Cayley graph component of the identity.
  std::unordered_map<std::uint64_t, Vertex> index;
  std::vector<Mat> elements{Mat{1, 0, 0, 1}};
  index.emplace(group.key(elements[0]), 0);
  std::vector<Edge> edges;
  for (std::size_t head = 0; head < elements.size(); ++head) {
    const Mat x = elements[head];
    for (const Mat& g : gens) {
      const Mat y = group.mul(x, g);
      auto [it, inserted] = index.emplace(group.key(y), static_cast<Vertex>(elements.size()));
      if (inserted) elements.push_back(y);
      const Vertex u = static_cast<Vertex>(head), v = it->second;
      if (u < v) edges.push_back({u, v});
    }
  }
  out.graph = Graph::from_edges(elements.size(), edges);
  if (elements.size() != out.group_order) {
    throw InvalidParams("Cayley graph has " + std::to_string(elements.size()) +
                        " vertices, expected " + std::to_string(out.group_order));
  }
  if (out.graph.regular_degree() != p + 1) throw DegreeViolation("LPS graph is not (p+1)-regular");
  return out;
}

Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  HostSpec{.kind = HostKind::RandomRegular, .n = n, .d = d}.validate();
  Rng rng(seed);
  constexpr int kMaxRestarts = 1000;
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    GraphBuilder b(n);
    std::vector<Vertex> points;
    points.reserve(n * d);
    for (std::size_t v = 0; v < n; ++v) points.insert(points.end(), d, static_cast<Vertex>(v));
    bool stuck = false;
    while (!points.empty() && !stuck) {
      int failures = 0;
      for (;;) {
        const std::size_t i = rng.below(points.size());
        std::size_t j = rng.below(points.size() - 1);
        if (j >= i) ++j;
        const Vertex u = points[i], v = points[j];
        if (u != v && b.add_edge(u, v)) {
          const std::size_t hi = std::max(i, j), lo = std::min(i, j);
          points[hi] = points.back();
          points.pop_back();
          points[lo] = points.back();
          points.pop_back();
          break;
        }
        if (++failures > 200) {
          stuck = true;
          break;
        }
      }
    }
    if (!stuck) return b.build();
  }
  throw RetryExhausted("random_regular(" + std::to_string(n) + ", " + std::to_string(d) +
                       ") failed after restarts");
}

Graph make_host(const HostSpec& spec) {
  spec.validate();
  if (spec.kind == HostKind::Lps) return lps_graph(spec.p, spec.q).graph;
  return random_regular(spec.n, spec.d, spec.seed);
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InvalidParams("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back(Edge::make(v, static_cast<Vertex>((v + 1) % n)));
  return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return Graph::from_edges(leaves + 1, edges);
}

Graph petersen_graph() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back(Edge::make(i, (i + 1) % 5));          // outer cycle
    edges.push_back(Edge::make(i, i + 5));                // spokes
    edges.push_back(Edge::make(i + 5, (i + 2) % 5 + 5));  // inner pentagram
  }
  return Graph::from_edges(10, edges);
}

Graph regular_tree_ball(std::size_t d, std::size_t radius) {
  if (d < 2) throw InvalidParams("tree degree must be at least 2");
  GraphBuilder b(1);
  std::vector<Vertex> frontier{0};
  for (std::size_t level = 0; level < radius; ++level) {
    std::vector<Vertex> next;
    const std::size_t children = level == 0 ? d : d - 1;
    for (Vertex v : frontier) {
      for (std::size_t c = 0; c < children; ++c) {
        const Vertex w = b.add_vertex();
        b.add_edge(v, w);
        next.push_back(w);
      }
    }
    frontier = std::move(next);
  }
  return b.build();
}

}  // namespace hgr
