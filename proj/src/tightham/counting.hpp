#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tightham/hypergraph.hpp"
#include "tightham/rational.hpp"

namespace tightham {

std::uint64_t count_triangles(const PairGraph& g);

// max(0, (m/3n)(4m - n^2)); the triangle lower bound for n vertices, m edges.
Rational ns_lower_bound(std::uint64_t n, std::uint64_t m);

// 3-graph of vertex sets of triangles in the link of x (x itself is in none).
Hypergraph3 triangles_of_link_in(const Hypergraph3& h, Vertex x);

// Three disjoint h-sets with every crossing triple an edge.
struct KCopy {
  std::array<std::vector<Vertex>, 3> parts;
};

enum class SearchOutcome { Found, Absent, BudgetExhausted };

struct KSearchResult {
  SearchOutcome outcome = SearchOutcome::BudgetExhausted;
  std::optional<KCopy> copy;
  std::uint64_t nodes = 0;
};

struct KSearchOptions {
  std::uint64_t node_budget = 2'000'000;
  std::uint64_t seed = 0;
  // Candidate order is shuffled when set; the search stays complete either way.
  bool randomize = true;
};

// Depth-first over part A, then part B, keeping the common neighbourhood of all
// chosen (a,b) pairs; part C is any h of what survives. Absent is returned only
// when the search space was exhausted.
KSearchResult find_k_hhh(const Hypergraph3& h, std::size_t hh,
                         const std::optional<std::array<VertexSet, 3>>& parts = std::nullopt,
                         const KSearchOptions& opt = {});

// Shared validation: disjoint parts of equal size h >= 1, all h^3 crossing triples present.
bool is_k_hhh(const Hypergraph3& h, const KCopy& k);

inline constexpr std::size_t kK222ExhaustiveCap = 20;

// Exact number of K_{2,2,2} copies (parts unordered). Requires n <= cap.
std::uint64_t count_k222(const Hypergraph3& h, std::size_t cap = kK222ExhaustiveCap);

// Unbiased estimate from uniformly sampled 6-sets.
double estimate_k222(const Hypergraph3& h, std::uint64_t samples, std::uint64_t seed);

}  // namespace tightham
