#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tightham/connector.hpp"
#include "tightham/counting.hpp"
#include "tightham/hypergraph.hpp"

namespace tightham {

// T^x ∩ H' as a 3-graph: triangles of the link H'(x) that are also edges of H'.
Hypergraph3 friendly_host(const Hypergraph3& hprime, Vertex x);

// Distinct K_{2,2,2} copies of T^x ∩ H' (x-friendly copies), up to `want`.
std::vector<KCopy> x_friendly_copies(const Hypergraph3& hprime, Vertex x, std::size_t want,
                                     std::uint64_t node_budget, std::uint64_t seed);

// Path of order 4 or 5 inside K with both endpairs in `large` (G_{1/3}).
// Parts are read as {u1,u2}, {v1,v2}, {w1,w2}; the defining edges are
// {u1,v1,w1} and {u2,v2,w2}. Throws if either edge has no large pair.
TightPath extract_absorber(const KCopy& k, const PairGraph& large);

struct AbsorberRecord {
  TightPath path;
  VertexSet absorbable;  // x off the path with every consecutive path pair in H(x)
  std::array<Vertex, 6> source{};
};

// Vertices that `p` can absorb: x not on p with {x, p_i, p_{i+1}} in H for all i.
VertexSet absorbable_by(const PairNeighborhoods& nbh, const TightPath& p);

struct FamilyOptions {
  std::size_t target = 0;            // 0: max(2, ceil(gamma n / 15))
  std::size_t probes_per_pick = 48;  // random 6-tuples tried per slot
  std::uint64_t search_budget = 200'000;
};

struct Family {
  std::vector<AbsorberRecord> records;
  std::vector<std::uint32_t> coverage;  // coverage[x] = #records that can absorb x
  std::size_t probes = 0;
  std::size_t hits = 0;  // probes that found a K_{2,2,2} in H'
};

// Pairwise disjoint absorbers drawn from random K_{2,2,2} copies of H', each
// slot filled by the probe that adds the most coverage of least-covered vertices.
Family select_family(const Hypergraph3& h, const Rational& gamma, std::uint64_t seed,
                     const VertexSet& forbidden, const FamilyOptions& opt = {});

struct AbsorbingPath {
  TightPath path;
  std::vector<AbsorberRecord> absorbers;
  std::vector<std::size_t> offsets;  // index of each absorber's first vertex in path

  std::size_t capacity() const noexcept { return absorbers.size(); }
};

using ConnectFn = std::function<std::optional<TightPath>(OrderedPair e, OrderedPair f, const VertexSet& forbidden)>;

ConnectFn make_connect_fn(const ConnectorContext& ctx, const RetryPolicy& policy = {});

struct BuildResult {
  std::optional<AbsorbingPath> absorbing;
  std::size_t failed_index = 0;  // joining absorber i-1 to absorber i failed
};

// Chains the absorbers with length-12 connections. Interiors avoid every
// family vertex and `forbidden`.
BuildResult build_absorbing_path(const Hypergraph3& h, const std::vector<AbsorberRecord>& family,
                                 const ConnectFn& connect_fn, const VertexSet& forbidden);

// Maximum assignment of U to absorbers (x only to records that can absorb it).
// Entry i is the absorber index for U's i-th vertex, or -1.
std::vector<int> assign_absorbers(const AbsorbingPath& a, const std::vector<Vertex>& u);

// A_U: same endpairs, vertex set V(A) ∪ U. Throws Capacity listing the vertices
// that could not be matched.
TightPath absorb(const AbsorbingPath& a, const VertexSet& u, const Hypergraph3& h);

}  // namespace tightham
