#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tightham/counting.hpp"
#include "tightham/hypergraph.hpp"
#include "tightham/rational.hpp"
#include "tightham/solver.hpp"

namespace tightham {

// min(rho^2 / 4, lambda^2 / 400)
Rational eps_of(const Rational& rho, const Rational& lambda);

enum class RegMode { Exhaustive, Sampled };
enum class RegVerdict { Regular, RegularSampled, Irregular };

const char* to_string(RegVerdict v);

// Subsets A_i of the three parts, each at least eps |V_i|, whose density is
// more than eps away from the density of the whole triple.
struct RegWitness {
  std::array<std::vector<Vertex>, 3> sets;
  Rational density;
};

struct RegCheck {
  RegVerdict verdict = RegVerdict::Regular;
  Rational density;  // d(V_1, V_2, V_3)
  std::optional<RegWitness> witness;
  std::uint64_t probes = 0;
};

struct RegCheckOptions {
  RegMode mode = RegMode::Sampled;
  std::size_t samples = 64;
  std::uint64_t seed = 0;
};

// Largest total part size the exhaustive mode accepts.
inline constexpr std::size_t kExhaustiveRegularityCap = 30;

// Exhaustive mode tries every admissible (A_1, A_2) and, for each size of A_3,
// the densest and sparsest A_3; it returns the witness of largest deviation.
// Sampled mode tries `samples` subset triples of size ceil(eps |V_i|), half
// uniform and half grown by alternating best responses; a pass there is only
// evidence. Any witness found is enlarged to the vertices that lean the same
// way, so splitting along it separates planted structure. Requires disjoint
// parts with eps |V_i| >= 1.
RegCheck regularity_check(const Hypergraph3& h, const std::vector<Vertex>& a1, const std::vector<Vertex>& a2,
                          const std::vector<Vertex>& a3, const Rational& eps, const RegCheckOptions& opt = {});
RegCheck regularity_check(const PairNeighborhoods& nbh, const std::vector<Vertex>& a1,
                          const std::vector<Vertex>& a2, const std::vector<Vertex>& a3, const Rational& eps,
                          const RegCheckOptions& opt = {});

struct TripleStat {
  std::array<std::uint32_t, 3> classes{};  // i < j < l
  Rational density;
  RegVerdict verdict = RegVerdict::Regular;
  std::optional<RegWitness> witness;
};

struct RegPartition {
  std::vector<std::vector<Vertex>> classes;  // sizes differ by at most one
  std::vector<TripleStat> triples;           // every i < j < l, lexicographic
  Rational epsilon;
  std::size_t rounds = 0;
  bool certified = false;       // fewer than eps C(t,3) triples failed the check
  std::vector<Rational> energy;  // before round 1, then after each round

  std::size_t t() const noexcept { return classes.size(); }
  std::size_t irregular_count() const;
};

// Sum over class triples of |V_i||V_j||V_l| / n^3 * d(V_i, V_j, V_l)^2.
Rational partition_energy(const Hypergraph3& h, const std::vector<std::vector<Vertex>>& classes);

struct RegularizeOptions {
  RegMode mode = RegMode::Sampled;
  std::size_t samples = 64;
  std::size_t max_rounds = 8;
  std::size_t t_cap = 0;  // 0: n / (3L)
  std::size_t L = 2;
};

// Energy-increment refinement from a seeded equitable t0-partition. Each round
// splits classes along witnesses of irregular triples and re-equalises; the
// re-equalised partition is accepted only if its energy went up, with a
// common refinement as the last resort, so the energy never decreases. Stops
// uncertified at the t cap or after max_rounds. Requires n >= t0 / eps.
RegPartition weak_regularize(const Hypergraph3& h, const Rational& eps, std::size_t t0, std::uint64_t seed,
                             const RegularizeOptions& opt = {});

// Triples of classes as a 3-graph on [t]; in_d and in_r are indexed like
// RegPartition::triples.
struct ClusterGraph {
  std::size_t t = 0;
  std::vector<Triple> edges;  // D ∩ R
  std::vector<bool> in_d;     // density >= lambda / 12
  std::vector<bool> in_r;     // not irregular

  Hypergraph3 as_hypergraph() const;
};

ClusterGraph cluster_graph(const RegPartition& p, const Rational& lambda);

struct ClusterDegreeCheck {
  enum class Status { Holds, Violated, Inapplicable };
  Status status = Status::Inapplicable;
  std::uint64_t min_degree = 0;  // delta(D)
  Rational bound;                // (5/9 + 2 lambda / 3) t^2 / 2
  Rational margin;               // min_degree - bound
};

// Diagnostic: compares delta(D) with the bound above verbatim, whenever
// delta_1(H) >= (5/9 + lambda) C(n-1, 2).
ClusterDegreeCheck check_cluster_degree(const Hypergraph3& h, const RegPartition& p, const Rational& lambda);

// Exact maximum matching of the cluster graph (t <= 64).
std::vector<Triple> cluster_matching(const ClusterGraph& k);

struct Packing {
  std::vector<KCopy> copies;  // copy.parts[i] lies in the i-th class
  std::array<std::size_t, 3> leftover{};
  bool maximal = false;  // the last search proved no further copy exists
};

// Greedy maximal packing of disjoint K_{L,L,L} across three disjoint classes.
Packing pack_klll(const Hypergraph3& h, const std::vector<Vertex>& v1, const std::vector<Vertex>& v2,
                  const std::vector<Vertex>& v3, std::size_t L, const KSearchOptions& opt = {});

enum class CoverMode { Greedy, Regularity };

struct CoverOptions {
  CoverMode mode = CoverMode::Greedy;
  Rational rho = Rational(1, 10);
  Rational lambda = Rational(1, 9);
  std::size_t L = 2;
  std::uint64_t seed = 0;
  std::optional<Rational> epsilon;  // regularity mode; default eps_of(rho, lambda)
  std::size_t t0 = 3;
  std::size_t samples = 64;
  std::uint64_t search_budget = 2'000'000;
  std::size_t max_copies = 0;  // 0: no limit
};

struct CoverResult {
  std::vector<KCopy> copies;
  std::size_t active = 0;   // vertices eligible for covering
  std::size_t covered = 0;
  Rational coverage;        // covered / active
  bool target_met = false;  // coverage >= 1 - rho
  bool exhausted = false;   // greedy stopped on a budget, not on proven absence
  std::optional<RegPartition> partition;
  std::vector<Triple> matching;
};

// Vertex-disjoint K_{L,L,L} copies inside `active` (all vertices when empty).
CoverResult cover_klll(const Hypergraph3& h, const CoverOptions& opt = {},
                       const std::optional<VertexSet>& active = std::nullopt);

// Longest tight path through the copy whose endpairs are both in `large`;
// every consecutive triple is crossing. Order 3L when two disjoint large pairs
// meet different class pairs, otherwise 3L - 1 where possible. nullopt if no
// such path of order >= 4 exists.
std::optional<TightPath> klll_path(const KCopy& q, const PairGraph& large);

}  // namespace tightham
