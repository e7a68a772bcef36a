#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tightham/hypergraph.hpp"

namespace tightham {

// Three-valued search outcome; Unknown means the node budget ran out.
enum class Verdict { Present, Absent, Unknown };

const char* to_string(Verdict v);

using OrderedPair = std::pair<Vertex, Vertex>;

// Vertex sequence v1..vt; edges are the consecutive triples.
struct TightPath {
  std::vector<Vertex> vertices;

  std::size_t order() const noexcept { return vertices.size(); }
  std::size_t length() const noexcept { return vertices.size() < 2 ? 0 : vertices.size() - 2; }
  // (v1, v2)
  OrderedPair start_pair() const { return {vertices.at(0), vertices.at(1)}; }
  // (vt, v_{t-1})
  OrderedPair end_pair() const { return {vertices.at(vertices.size() - 1), vertices.at(vertices.size() - 2)}; }
};

struct TightCycle {
  std::vector<Vertex> vertices;  // cyclic order
};

inline constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;

// Largest n the bitmask searches accept.
inline constexpr std::size_t kSolverMaxVertices = 64;

struct CycleResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<TightCycle> cycle;
  std::uint64_t nodes = 0;
};

// Exact search for a tight Hamiltonian cycle; for n = 3 the single triple is
// the cycle. Requires 3 <= n <= kSolverMaxVertices.
CycleResult find_tight_ham_cycle(const Hypergraph3& h, std::uint64_t node_budget = kDefaultNodeBudget);

struct OrderBounds {
  std::size_t min_order = 4;
  std::size_t max_order = 14;
};

struct PathResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<TightPath> path;
  std::uint64_t nodes = 0;
};

// Path starting e.first, e.second and ending f.second, f.first (so its
// endpairs are e and f); interior vertices drawn from `allowed`.
PathResult find_tight_path(const Hypergraph3& h, OrderedPair e, OrderedPair f, OrderBounds bounds,
                           const VertexSet& allowed, std::uint64_t node_budget = kDefaultNodeBudget);

struct MatchingResult {
  std::vector<Triple> edges;
  bool certified = false;  // false when the budget stopped the search
  std::uint64_t nodes = 0;
};

// Maximum set of pairwise disjoint edges (branch and bound). n <= 64.
MatchingResult max_matching(const Hypergraph3& h, std::uint64_t node_budget = kDefaultNodeBudget);

// Independent checkers: they read the raw colex bitmap and share nothing with
// the searches above.
struct CheckResult {
  bool ok = true;
  std::string reason;
  std::optional<Triple> bad_triple;
};

CheckResult verify_path(const Hypergraph3& h, const TightPath& p);
CheckResult verify_cycle(const Hypergraph3& h, const TightCycle& c);
CheckResult verify_matching(const Hypergraph3& h, const std::vector<Triple>& m);

}  // namespace tightham
