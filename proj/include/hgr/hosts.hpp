#pragma once

#include <cstdint>
#include <string>

#include "hgr/graph.hpp"

namespace hgr {

enum class HostKind { Lps, RandomRegular };

struct HostSpec {
  HostKind kind = HostKind::RandomRegular;
  // Lps
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  // RandomRegular
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;

  /// Throws InvalidParams when the parameters violate the kind's requirements.
  void validate() const;
  std::size_t degree() const { return kind == HostKind::Lps ? static_cast<std::size_t>(p + 1) : d; }
};

/// Which Cayley graph the LPS construction produced.
///  - Psl: (p|q) = 1, Cayley graph of PSL2(F_q), q(q^2-1)/2 vertices.
///  - PslFolded: (p|q) = -1; the bipartite PGL2(F_q) graph folded onto PSL2(F_q)
///    through an involution normalising the generators. Non-bipartite, same
///    vertex count as Psl, nontrivial eigenvalues bounded by those of the
///    bipartite graph.
///  - PglBipartite: (p|q) = -1 and no normalising involution exists.
enum class LpsVariant { Psl, PslFolded, PglBipartite };

std::string to_string(LpsVariant v);

struct LpsGraph {
  Graph graph;
  LpsVariant variant = LpsVariant::Psl;
  int legendre = 0;  // (p|q)
  std::size_t group_order = 0;
};

bool is_prime(std::uint64_t x);
/// Legendre symbol (a|p) for odd prime p: -1, 0 or 1.
int legendre_symbol(std::uint64_t a, std::uint64_t p);

/// (p+1)-regular LPS Ramanujan graph X^{p,q}. Requires distinct primes
/// p, q = 1 mod 4.
LpsGraph lps_graph(std::uint64_t p, std::uint64_t q);

/// Simple d-regular graph from the pairing model, rejecting loops and
/// multi-edges pair by pair and restarting when stuck. Deterministic per seed.
Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

Graph make_host(const HostSpec& spec);

// Small named graphs used by the test suite and the acceptance presets.
Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph petersen_graph();
/// Ball of the given radius around a root (vertex 0) in the infinite
/// d-regular tree, vertices numbered breadth first.
Graph regular_tree_ball(std::size_t d, std::size_t radius);

}  // namespace hgr
