#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hgr/gadget.hpp"
#include "hgr/graph.hpp"

namespace hgr {

/// How consecutive segments of a linkage are joined.
///  - Free: any step may follow a segment boundary, including a backtrack.
///  - Reversal: each segment starts by reversing the last step of the
///    previous one. With 2k segments of length l+1 starting on (u, v) and
///    ending with the step v -> u, these are exactly the walks counted by
///    <1_uv, (B^l (B^T)^l)^k 1_uv>.
enum class JointMode { Free, Reversal };

struct LinkageQuery {
  const Graph* graph = nullptr;
  Vertex u = 0, v = 0;  // start edge (u, v)
  std::size_t segments = 1;      // a
  std::size_t segment_len = 1;   // b
  bool closed = true;
  JointMode joints = JointMode::Free;
  /// Free mode: require the first step to be u -> v instead of any step from u.
  bool pin_first_step = false;
  std::uint64_t node_budget = 200'000'000;
};

/// Exact count by depth-first enumeration. Throws BudgetExceeded when more
/// than node_budget search nodes would be visited.
std::uint64_t count_linkages_bruteforce(const LinkageQuery& q);

/// <1_uv, (B^l (B^T)^l)^k 1_uv> in exact integer arithmetic. Throws Overflow.
std::uint64_t quadratic_form(const Graph& g, Vertex u, Vertex v, std::size_t k, std::size_t ell);

struct EncodingBound {
  double log_value = 0.0;
  double value = 0.0;  // +inf when it does not fit a double
  /// value^(1 / (2 k (l+1))).
  double root = 0.0;
};

/// 2 (k(l+1))^2 (l+1)^{8k} 2^{2k} sqrt(d-1)^{2k(l+1)+1}, evaluated in log space.
EncodingBound encoding_bound(std::size_t k, std::size_t ell, std::size_t d);

struct TraceBoundReport {
  std::size_t k = 0, ell = 0, depth = 0;
  std::size_t edges_checked = 0;
  std::uint64_t max_quadratic_form = 0;
  Edge worst_edge;  // directed (u, v) attaining the maximum
  double bound = 0.0;
  double ratio = 0.0;  // max_quadratic_form / bound
  bool passed = false;
  /// Free-joint closed linkage count from the worst edge's tail, when within budget.
  std::optional<std::uint64_t> free_linkages;
  bool chain_ok = true;  // quadratic form <= free count <= bound, when counted
};

/// Truncates X at `depth` (>= k (l+1), so every counted walk fits) and checks
/// the quadratic form against the encoding bound for every directed edge
/// leaving a vertex of H.
TraceBoundReport verify_trace_bound(const Gadget& gadget, std::size_t depth, std::size_t k,
                                    std::size_t ell, std::uint64_t brute_force_budget = 20'000'000);

}  // namespace hgr
