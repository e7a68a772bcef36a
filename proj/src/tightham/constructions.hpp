#pragma once

#include <cstdint>

#include "tightham/hypergraph.hpp"
#include "tightham/solver.hpp"

namespace tightham {

// X = {0, ..., |X|-1} in all three constructions.

// |X| = ceil((n+1)/3); edges e with |e ∩ X| != 2. n >= 4.
Hypergraph3 construction_i(std::size_t n);
// |X| = ceil(2n/3); edges e with |e ∩ X| != 2. n >= 4.
Hypergraph3 construction_ii(std::size_t n);
// |X| = floor(n/3) - 1; edges meeting X. n >= 6.
Hypergraph3 construction_iii(std::size_t n);

// family is 1, 2 or 3 for (i), (ii), (iii).
std::size_t construction_x_size(int family, std::size_t n);

// Each triple independently with probability p, in colex order from one stream.
Hypergraph3 random_h3(std::size_t n, double p, std::uint64_t seed);

inline constexpr std::size_t kThresholdSearchCap = 14;
inline constexpr std::size_t kThresholdExhaustiveCap = 6;

struct ThresholdOptions {
  std::uint64_t seed = 1;
  std::size_t restarts = 8;
  std::size_t iterations = 400;  // flip attempts per restart
  std::uint64_t solver_budget = 2'000'000;
};

struct ThresholdResult {
  std::size_t n = 0;
  std::uint64_t best_delta1 = 0;
  Hypergraph3 witness;     // certified to have no tight Hamiltonian cycle
  bool certified = false;  // true only when exhaustive: h(n) = best_delta1 + 1
  bool exhaustive = false;
  std::uint64_t solver_calls = 0;
  std::uint64_t solver_unknown = 0;  // candidates skipped because the solver gave up
};

// Largest delta_1 among 3-graphs on n vertices without a tight Hamiltonian
// cycle. Exhaustive for n <= 6, hill-climbing from the constructions above.
ThresholdResult threshold_witness_search(std::size_t n, const ThresholdOptions& opt = {});

}  // namespace tightham
