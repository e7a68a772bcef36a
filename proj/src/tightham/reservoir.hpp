#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tightham/hypergraph.hpp"
#include "tightham/rational.hpp"

namespace tightham {

// |U ∩ R| >= (alpha - 2 N^{-1/3}) |R|, N = |V|.
struct SetConstraint {
  VertexSet set;
  Rational alpha;
  std::string label;
};

// |L[R]| >= (beta - 3 N^{-1/3}) C(|R|, 2).
struct GraphConstraint {
  PairGraph graph;
  Rational beta;
  std::string label;
};

struct ReservoirConstraints {
  std::vector<SetConstraint> sets;
  std::vector<GraphConstraint> graphs;
  // Extra literal bound lo <= |R| <= hi on top of the concentration window.
  std::optional<std::pair<Rational, Rational>> window;
};

struct Violation {
  enum class Kind { Size, Window, Set, Graph };
  Kind kind = Kind::Size;
  std::size_t index = 0;  // into sets or graphs
  std::string label;
  std::uint64_t have = 0;  // |R|, |U ∩ R| or |L[R]|
  double need = 0;         // the (irrational) threshold, for display only
};

const char* to_string(Violation::Kind k);

// Every constraint checked by exact integer comparison of cubes. Returns the
// violations in constraint order; empty means R is accepted.
std::vector<Violation> check_reservoir(const VertexSet& ground, const Rational& p, const ReservoirConstraints& c,
                                       const VertexSet& r);

struct ReservoirResult {
  std::optional<VertexSet> reservoir;
  std::size_t attempts = 0;
  std::vector<Violation> violations;  // of the last rejected sample
};

// Binomial subset of `ground` with rate p, resampled until check_reservoir
// accepts or `retries` samples were rejected. Attempt k draws from
// derive_seed(seed, k), so (seed, retries, constraints) fixes the output.
ReservoirResult sample_reservoir(const VertexSet& ground, const Rational& p, const ReservoirConstraints& c,
                                 std::uint64_t seed, std::size_t retries);

struct ReservoirMenu {
  VertexSet ground;  // V(H) \ V(A)
  Rational p;        // gamma^2 / 3
  ReservoirConstraints constraints;
  std::size_t pair_sets = 0;    // one per pair of G_{1/3}
  std::size_t vertex_sets = 0;  // one per vertex
};

// Sets N_H(e) \ V(A) for e in G_{1/3} with alpha = 1/3 - gamma, N_{G_{1/3}}(v) \ V(A)
// with alpha = .7 - gamma, link graphs H(v) - V(A) with beta = .8 - 3 gamma, and
// the window gamma^2 n / 4 <= |R| <= gamma^2 n / 2.
ReservoirMenu reservoir_menu(const Hypergraph3& h, const VertexSet& absorbing_vertices, const Rational& gamma);

// The weakened properties every R' still has after the connections consumed
// part of R: pairs of G_{1/3} keep .33|R'| neighbours in R', vertices keep
// .69|R'| G_{1/3}-neighbours in R', and delta(H[R']) >= .799 C(|R'|-1, 2).
struct DegradedCheck {
  bool pairs = true;
  bool vertices = true;
  bool min_degree = true;
  std::optional<std::pair<Vertex, Vertex>> pair_witness;
  std::optional<Vertex> vertex_witness;
  std::optional<Vertex> degree_witness;

  bool holds() const noexcept { return pairs && vertices && min_degree; }
};

DegradedCheck check_degraded(const Hypergraph3& h, const PairGraph& g13, const VertexSet& r);

}  // namespace tightham
