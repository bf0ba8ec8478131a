#include "hgr/linkage.hpp"

#include <cmath>
#include <limits>

#include "hgr/errors.hpp"
#include "hgr/spectral.hpp"

namespace hgr {

namespace {

struct Enumerator {
  const Graph& g;
  const LinkageQuery& q;
  std::size_t total_steps;
  std::uint64_t nodes = 0;
  std::uint64_t count = 0;

  // `prev` is the vertex we arrived from, `step` the number of steps taken.
  void walk(Vertex at, Vertex prev, std::size_t step) {
    if (++nodes > q.node_budget) {
      throw BudgetExceeded("linkage enumeration exceeded " + std::to_string(q.node_budget) + " nodes");
    }
    if (step == total_steps) {
      if (!q.closed || at == q.u) ++count;
      return;
    }
    const bool joint = step > 0 && step % q.segment_len == 0;
    if (q.joints == JointMode::Reversal) {
      if (joint) {
        walk(prev, at, step + 1);
        return;
      }
      if (step + 1 == total_steps && q.closed) {
        // The final step must be v -> u, the reverse of the starting step.
        if (at == q.v && prev != q.u && g.has_edge(q.v, q.u)) walk(q.u, at, step + 1);
        return;
      }
    }
    for (Vertex next : g.neighbors(at)) {
      if (step > 0 && !joint && next == prev) continue;
      walk(next, at, step + 1);
    }
  }
};

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw Overflow("quadratic form exceeds 64 bits");
  return out;
}

}  // namespace

std::uint64_t count_linkages_bruteforce(const LinkageQuery& q) {
  if (q.graph == nullptr) throw InvalidParams("linkage query without a graph");
  if (q.segments == 0 || q.segment_len == 0) throw InvalidParams("segments and segment length must be positive");
  const Graph& g = *q.graph;
  if (q.u >= g.num_vertices() || !g.has_edge(q.u, q.v)) throw InvalidParams("start edge is not in the graph");
  Enumerator e{g, q, q.segments * q.segment_len};
  const bool pinned = q.pin_first_step || q.joints == JointMode::Reversal;
  if (pinned) {
    e.nodes = 1;
    e.walk(q.v, q.u, 1);
  } else {
    e.walk(q.u, q.u, 0);
  }
  return e.count;
}

std::uint64_t quadratic_form(const Graph& g, Vertex u, Vertex v, std::size_t k, std::size_t ell) {
  const NonbacktrackingOperator b(g);
  const std::size_t e = b.space().index(u, v);
  const std::size_t dim = b.dimension();
  // Overflow-checked accumulation type for the operator's templated apply.
  struct Checked {
    std::uint64_t x = 0;
    Checked& operator+=(const Checked& o) {
      x = checked_add(x, o.x);
      return *this;
    }
  };
  std::vector<Checked> x(dim), y(dim);
  x[e].x = 1;
  for (std::size_t round = 0; round < k; ++round) {
    for (std::size_t i = 0; i < ell; ++i) {
      b.apply_transpose(x, y);
      std::swap(x, y);
    }
    for (std::size_t i = 0; i < ell; ++i) {
      b.apply(x, y);
      std::swap(x, y);
    }
  }
  return x[e].x;
}

EncodingBound encoding_bound(std::size_t k, std::size_t ell, std::size_t d) {
  if (k == 0 || ell == 0 || d < 2) throw InvalidParams("encoding bound needs k, l >= 1 and d >= 2");
  const double kd = static_cast<double>(k);
  const double l1 = static_cast<double>(ell) + 1.0;
  EncodingBound out;
  out.log_value = std::log(2.0) + 2.0 * std::log(kd * l1) + 8.0 * kd * std::log(l1) +
                  2.0 * kd * std::log(2.0) +
                  (2.0 * kd * l1 + 1.0) * 0.5 * std::log(static_cast<double>(d) - 1.0);
  out.value = out.log_value < std::log(std::numeric_limits<double>::max())
                  ? std::exp(out.log_value)
                  : std::numeric_limits<double>::infinity();
  out.root = std::exp(out.log_value / (2.0 * kd * l1));
  return out;
}

TraceBoundReport verify_trace_bound(const Gadget& gadget, std::size_t depth, std::size_t k,
                                    std::size_t ell, std::uint64_t brute_force_budget) {
  if (depth < k * (ell + 1)) {
    throw PreconditionViolated("truncation depth " + std::to_string(depth) + " is below k(l+1) = " +
                               std::to_string(k * (ell + 1)));
  }
  const XTruncation t = truncate_x(gadget, depth);
  TraceBoundReport r;
  r.k = k;
  r.ell = ell;
  r.depth = depth;
  r.bound = encoding_bound(k, ell, gadget.d).value;
  const std::size_t hn = t.u_set.size() + t.v_set.size();
  for (Vertex u = 0; u < hn; ++u) {
    for (Vertex v : t.graph.neighbors(u)) {
      const std::uint64_t value = quadratic_form(t.graph, u, v, k, ell);
      ++r.edges_checked;
      if (r.edges_checked == 1 || value > r.max_quadratic_form) {
        r.max_quadratic_form = value;
        r.worst_edge = {u, v};
      }
    }
  }
  r.ratio = static_cast<double>(r.max_quadratic_form) / r.bound;
  r.passed = static_cast<double>(r.max_quadratic_form) <= r.bound;

  LinkageQuery q;
  q.graph = &t.graph;
  q.u = r.worst_edge.u;
  q.v = r.worst_edge.v;
  q.segments = 2 * k;
  q.segment_len = ell + 1;
  q.closed = true;
  q.joints = JointMode::Free;
  q.node_budget = brute_force_budget;
  try {
    r.free_linkages = count_linkages_bruteforce(q);
    r.chain_ok = r.max_quadratic_form <= *r.free_linkages &&
                 static_cast<double>(*r.free_linkages) <= r.bound;
  } catch (const BudgetExceeded&) {
    r.free_linkages.reset();
  }
  return r;
}

}  // namespace hgr
