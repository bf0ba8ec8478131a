#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hgr/graph.hpp"

namespace hgr {

struct ExpansionReport {
  std::size_t set_size = 0;
  double psi = 0.0;                    // |Γ(S)| / |S|
  std::size_t neighborhood_size = 0;   // |Γ(S)|
  std::size_t boundary = 0;            // |Γ(S) \ S|
  std::size_t internal_edges = 0;      // e_S
  VertexSet witness;
  std::string mode;
};

/// Throws InvalidParams for an empty set.
ExpansionReport vertex_expansion(const Graph& g, const VertexSet& s);

enum class SearchMode { Exhaustive, Sampled };

struct MinExpansionOptions {
  SearchMode mode = SearchMode::Exhaustive;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  /// Extra starting sets for the sampled search.
  std::vector<VertexSet> seeds;
  /// Exhaustive mode refuses searches with more candidate sets than this.
  std::uint64_t exhaustive_limit = 50'000'000;
};

/// Lowest Ψ over sets of size 1..max_size. Exhaustive mode is exact; sampled
/// mode (random connected and uniform sets followed by local descent) gives an
/// upper bound on the minimum and labels itself "sampled".
ExpansionReport min_vertex_expansion(const Graph& g, std::size_t max_size,
                                     const MinExpansionOptions& options = {});

struct MixingReport {
  std::uint64_t e_st = 0;  // ordered pairs (x, y), x in S, y in T, x ~ y
  double expected = 0.0;   // d |S| |T| / n
  double deviation = 0.0;  // |e(S,T) - expected|
  double bound = 0.0;      // lambda sqrt(|S| |T|)
  double slack = 0.0;      // bound - deviation
  bool holds = false;
};

/// Requires a regular graph.
MixingReport expander_mixing_check(const Graph& g, double lambda, const VertexSet& s,
                                   const VertexSet& t);

struct MixingAudit {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double min_slack = 0.0;
};

/// Random pairs (S, T) of uniformly random sizes.
MixingAudit expander_mixing_audit(const Graph& g, double lambda, std::size_t trials,
                                  std::uint64_t seed);

/// H(S): the induced edges of S plus, for every boundary vertex with i >= 2
/// neighbours in S, a path through those neighbours in increasing order.
/// Vertex j of the result is the j-th smallest member of S.
struct HsGraph {
  Graph graph;
  std::size_t induced_edges = 0;
  std::size_t path_edges = 0;          // distinct path edges added
  std::size_t duplicates_skipped = 0;  // path edges already present
  /// n_i: boundary vertices with exactly i neighbours in S, for i = 0..max degree.
  std::vector<std::size_t> n_i;
  std::size_t boundary = 0;
  /// e_S + n_2 + 2 n_3 + ... counted with multiplicity.
  std::size_t counted_edges = 0;
};

HsGraph build_hs(const Graph& g, const VertexSet& s);

struct MooreReport {
  std::optional<std::size_t> girth;  // nullopt for forests
  double average_degree = 0.0;
  double bound = 0.0;  // 2 log_{dbar-1} n + 2
  bool passed = false;
};

/// Throws DegenerateDegree when the average degree is at most 2.
MooreReport moore_bound_check(const Graph& g);

struct BoundParams {
  std::size_t d = 0;
  double lambda = 0.0;
  double kappa = 0.0;
  double alpha = 0.0;
  std::size_t n = 0;
};

/// Which form of the small-set bound to evaluate:
///  - Derived: d - λ - (d^{2κ/α} - 1)/2 - d / n^{1-κ}
///  - Stated:  d - λ - d^{κ/α}/2 - d / n^{1-κ}
enum class BoundVariant { Derived, Stated };

double small_set_bound(const BoundParams& p, BoundVariant variant = BoundVariant::Derived);

struct SmallSetAudit {
  std::size_t n = 0, d = 0;
  std::optional<std::size_t> girth;
  double lambda = 0.0;
  double kappa = 0.0;
  double alpha = 0.0;
  bool alpha_positive = false;  // girth > 4, so some α > 0 satisfies the girth condition
  std::size_t max_set_size = 0;
  double bound = 0.0;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double min_ratio = 0.0;  // smallest |∂S|/|S| seen
  std::size_t identity_failures = 0;  // Σ i n_i != d|S| - 2 e_S
  std::size_t hs_count_failures = 0;  // H(S) edge count mismatch
  std::size_t hs_girth_failures = 0;  // g(H(S)) < ceil(g/2)
  /// Diagnostics: bound evaluated with each set's own κ_S = log|S| / log n,
  /// and the stated variant at the configured κ.
  std::size_t per_set_kappa_violations = 0;
  std::size_t stated_variant_violations = 0;
  double stated_bound = 0.0;
  bool passed = false;
};

/// Samples `trials` sets of size <= n^κ (alternating BFS-grown connected sets
/// and uniform sets) and checks each against the small-set bound, with α
/// derived from the measured girth as (g - 4) / (2 log_{d-1} n).
SmallSetAudit audit_small_sets(const Graph& g, double lambda, double kappa, std::size_t trials,
                               std::uint64_t seed);

}  // namespace hgr
