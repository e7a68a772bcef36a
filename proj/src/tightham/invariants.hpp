#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tightham/hypergraph.hpp"

namespace tightham {

struct InvariantCheck {
  std::string name;
  bool ok = true;
  std::string detail;  // first counterexample, empty when ok
};

// Structural identities any 3-graph must satisfy: degree sums, link degrees,
// antitonicity of G_alpha, the H' filter, vertex removal, the triangle lower
// bound on every link and the shape of T^x. A failure means a library bug,
// not a property of H. `seed` picks the vertex sets for the removal check.
std::vector<InvariantCheck> run_invariants(const Hypergraph3& h, std::uint64_t seed = 1);

}  // namespace tightham
