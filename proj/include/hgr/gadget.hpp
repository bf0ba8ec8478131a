#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hgr/graph.hpp"

namespace hgr {

/// Fewest vertices a degree-regular graph of the given girth can have.
std::size_t moore_bound_vertices(std::size_t degree, std::size_t girth);

struct HighGirthOptions {
  std::size_t max_restarts = 40;
  std::size_t moves_per_restart = 20000;
  /// Give up a restart after this many consecutive non-improving moves.
  std::size_t stall_limit = 4000;
};

struct HighGirthResult {
  Graph graph;
  std::optional<std::size_t> girth;
  bool reached_target = false;
  std::size_t restarts = 0;
  std::size_t accepted_switches = 0;
};

/// Random `degree`-regular graph on n vertices pushed towards girth >=
/// girth_target by double-edge switches. Returns the best graph found when
/// the target is not reached within the budget. Throws InfeasibleTarget when
/// the target exceeds what the Moore bound allows.
HighGirthResult high_girth_regular(std::size_t n, std::size_t degree, std::size_t girth_target,
                                   std::uint64_t seed, const HighGirthOptions& options = {});

struct Subdivision {
  Graph graph;
  VertexSet u_set;  // original vertices, ids [0, n)
  VertexSet v_set;  // one vertex per original edge, ids [n, n + m)
};

/// Incidence graph: every edge {a, b} becomes a path a - v_ab - b.
Subdivision subdivide(const Graph& g);

/// H' = H plus pendants. Vertex layout: U, then V, then Q (q_i attached to
/// the i-th vertex of U), then R (d-2 consecutive pendants per vertex of V).
struct Gadget {
  Graph graph;
  VertexSet u_set, v_set, q_set, r_set;
  std::size_t gamma = 0;
  std::size_t d = 0;
  std::optional<std::size_t> girth_h;

  /// The biregular part H (induced on U and V).
  Graph h_part() const;
  std::size_t size() const { return graph.num_vertices(); }
};

/// Requires h to be (d-1, 2)-biregular on (u_set, v_set); throws
/// PreconditionViolated otherwise.
Gadget attach_pendants(const Graph& h, const VertexSet& u_set, const VertexSet& v_set,
                       std::size_t d);

/// k = gamma (d-1) (2 + (d-1)(d-2)) / 4. Throws NonIntegral.
std::size_t matching_size_k(std::size_t gamma, std::size_t d);

struct SpacedMatching {
  std::vector<Edge> edges;
  /// Largest r with 4 k (d-1)^r <= n: the spacing the greedy argument guarantees.
  std::size_t guaranteed_spacing = 0;
  /// Spacing actually enforced (the largest r for which the greedy succeeded).
  std::size_t enforced_spacing = 0;
  /// Minimum distance between endpoints of distinct matching edges; nullopt if k <= 1.
  std::optional<std::size_t> min_distance;
};

/// Greedy matching of k edges whose endpoints are pairwise at distance >= r.
/// Starts at the guaranteed spacing and raises r while the greedy still
/// succeeds. Throws HostTooSmall when 4k > n or no spacing works.
SpacedMatching spaced_matching(const Graph& g, std::size_t k, std::uint64_t seed);

std::optional<std::size_t> matching_min_distance(const Graph& g, std::span<const Edge> matching);

/// G' with the gadget appended after the host's vertices (gadget vertex x
/// becomes host_n + x).
struct Splice {
  Graph graph;
  VertexSet planted_u;
  VertexSet v_set, q_set, r_set;  // in G' ids
  std::vector<Edge> matching;     // host ids
  /// Pendant (G' id) -> its d-1 matched endpoints (host ids), sorted.
  std::map<Vertex, std::vector<Vertex>> attachment;
  std::size_t host_n = 0;
  std::size_t gamma = 0;
  std::size_t d = 0;
  std::optional<std::size_t> min_matching_distance;
  std::optional<std::size_t> girth_h;
};

/// Deletes the matching and wires every Q/R pendant to d-1 matched endpoints,
/// each endpoint used exactly once. Throws DegreeViolation if G' is not
/// d-regular.
Splice splice(const Graph& host, const Gadget& gadget, std::span<const Edge> matching,
              std::uint64_t seed);

/// H~ (a (d-1)-regular graph on gamma vertices pushed to high girth), then
/// H = its subdivision, then H' = H plus pendants. Same seed stream as the
/// pipeline, so build_gadget(gamma, d, seed) equals the pipeline's gadget.
Gadget build_gadget(std::size_t gamma, std::size_t d, std::uint64_t seed,
                    const HighGirthOptions& options = {},
                    std::optional<std::size_t>* base_girth = nullptr);

struct PipelineReport {
  std::size_t d = 0;
  std::size_t gamma = 0;
  std::size_t host_n = 0;
  std::size_t k = 0;
  std::optional<std::size_t> girth_h_tilde;  // base graph before subdivision
  std::optional<std::size_t> girth_h;
  std::optional<std::size_t> girth_host;
  std::size_t guaranteed_spacing = 0;
  std::size_t enforced_spacing = 0;
  std::optional<std::size_t> min_matching_distance;
  /// 2 log_{d-1} gamma, the girth guaranteed for H.
  double log_girth_term = 0.0;
  /// min(2 log_{d-1} gamma, matching distance).
  double asymptotic_girth_bound = 0.0;
  /// min(g(H), g(host), min(spacing, g(host)-1) + 2): bound from the three
  /// cycle classes with measured ingredients.
  std::optional<std::size_t> structural_girth_bound;
  std::size_t gadget_size = 0;    // |U|+|V|+|Q|+|R|
  std::size_t pendant_count = 0;  // |Q|+|R| = gamma (2 + (d-1)(d-2)) / 2
};

struct PipelineResult {
  Splice splice;
  Gadget gadget;
  PipelineReport report;
};

/// H~ -> H -> H' -> M -> G'. Requires d >= 4, a d-regular host, gamma even
/// and gamma^3 <= |host|.
PipelineResult construct_pipeline(std::size_t d, const Graph& host, std::size_t gamma,
                                  std::uint64_t seed, const HighGirthOptions& options = {});

/// G' edge list plus a JSON sidecar with gamma, d, matching, attachment,
/// planted set and seed.
void write_splice(const Splice& s, std::uint64_t seed, const std::filesystem::path& edge_list,
                  const std::filesystem::path& sidecar);
Splice read_splice(const std::filesystem::path& edge_list, const std::filesystem::path& sidecar);

}  // namespace hgr
