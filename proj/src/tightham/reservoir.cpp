#include "tightham/reservoir.hpp"

#include <cmath>

#include "tightham/error.hpp"
#include "tightham/parallel.hpp"
#include "tightham/random.hpp"

namespace tightham {

const char* to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::Size: return "size";
    case Violation::Kind::Window: return "window";
    case Violation::Kind::Set: return "set";
    case Violation::Kind::Graph: return "graph";
  }
  return "size";
}

namespace {

Rational cube(const Rational& x) { return x * x * x; }

// | |R| - pN | <= p N^{2/3}  <=>  |R - pN|^3 <= p^3 N^2
bool size_ok(std::uint64_t r, const Rational& p, std::uint64_t n) {
  Rational d = Rational(r) - p * n;
  if (d < 0) d = -d;
  return cube(d) <= cube(p) * Rational(n) * n;
}

// have >= (target - k N^{-1/3}) * scale  <=>  deficit <= 0 or deficit^3 N <= k^3 scale^3,
// with deficit = target * scale - have.
bool lower_ok(std::uint64_t have, const Rational& target, std::uint64_t scale, std::uint64_t k, std::uint64_t n) {
  const Rational deficit = target * scale - Rational(have);
  if (deficit <= 0) return true;
  return cube(deficit) * n <= cube(Rational(k * scale));
}

std::uint64_t induced_edges(const PairGraph& g, const VertexSet& r) {
  std::uint64_t twice = 0;
  r.for_each([&](Vertex v) { twice += g.neighbors(v).intersection_count(r); });
  return twice / 2;
}

}  // namespace

std::vector<Violation> check_reservoir(const VertexSet& ground, const Rational& p, const ReservoirConstraints& c,
                                       const VertexSet& r) {
  if (!(p > 0 && p < 1)) fail(ErrorCode::InvalidArgument, "reservoir rate must lie in (0,1), got " + to_string(p));
  if (r.universe() != ground.universe()) fail(ErrorCode::InvalidArgument, "reservoir universe does not match");
  if (!r.is_subset_of(ground)) fail(ErrorCode::InvalidArgument, "reservoir leaves the ground set");
  const std::uint64_t n = ground.count();
  const std::uint64_t size = r.count();
  const double shrink = n ? 1.0 / std::cbrt(static_cast<double>(n)) : 0.0;
  std::vector<Violation> out;
  if (!size_ok(size, p, n)) {
    Violation v;
    v.kind = Violation::Kind::Size;
    v.have = size;
    v.need = to_double(p) * static_cast<double>(n);
    out.push_back(v);
  }
  if (c.window) {
    const auto& [lo, hi] = *c.window;
    if (Rational(size) < lo || Rational(size) > hi) {
      Violation v;
      v.kind = Violation::Kind::Window;
      v.have = size;
      v.need = Rational(size) < lo ? to_double(lo) : to_double(hi);
      out.push_back(v);
    }
  }
  // Per-slot results so the report order does not depend on scheduling.
  std::vector<std::optional<Violation>> slots(c.sets.size() + c.graphs.size());
  const std::uint64_t pairs = choose2(size);
  parallel_for(slots.size(), [&](std::size_t i) {
    if (i < c.sets.size()) {
      const auto& s = c.sets[i];
      const std::uint64_t have = s.set.intersection_count(r);
      if (!lower_ok(have, s.alpha, size, 2, n)) {
        Violation v;
        v.kind = Violation::Kind::Set;
        v.index = i;
        v.label = s.label;
        v.have = have;
        v.need = (to_double(s.alpha) - 2 * shrink) * static_cast<double>(size);
        slots[i] = v;
      }
    } else {
      const std::size_t j = i - c.sets.size();
      const auto& gc = c.graphs[j];
      const std::uint64_t have = induced_edges(gc.graph, r);
      if (!lower_ok(have, gc.beta, pairs, 3, n)) {
        Violation v;
        v.kind = Violation::Kind::Graph;
        v.index = j;
        v.label = gc.label;
        v.have = have;
        v.need = (to_double(gc.beta) - 3 * shrink) * static_cast<double>(pairs);
        slots[i] = v;
      }
    }
  });
  for (auto& s : slots)
    if (s) out.push_back(std::move(*s));
  return out;
}

ReservoirResult sample_reservoir(const VertexSet& ground, const Rational& p, const ReservoirConstraints& c,
                                 std::uint64_t seed, std::size_t retries) {
  if (!(p > 0 && p < 1)) fail(ErrorCode::InvalidArgument, "reservoir rate must lie in (0,1), got " + to_string(p));
  for (const auto& s : c.sets)
    if (s.set.universe() != ground.universe()) fail(ErrorCode::InvalidArgument, "constraint set universe mismatch");
  for (const auto& gc : c.graphs)
    if (gc.graph.order() != ground.universe()) fail(ErrorCode::InvalidArgument, "constraint graph universe mismatch");
  const double rate = to_double(p);
  ReservoirResult res;
  for (std::size_t k = 0; k < retries; ++k) {
    Rng rng(derive_seed(seed, k));
    VertexSet r(ground.universe());
    ground.for_each([&](Vertex v) {
      if (rng.bernoulli(rate)) r.insert(v);
    });
    ++res.attempts;
    auto bad = check_reservoir(ground, p, c, r);
    if (bad.empty()) {
      res.reservoir = std::move(r);
      res.violations.clear();
      return res;
    }
    res.violations = std::move(bad);
  }
  return res;
}

ReservoirMenu reservoir_menu(const Hypergraph3& h, const VertexSet& absorbing_vertices, const Rational& gamma) {
  const std::size_t n = h.order();
  if (absorbing_vertices.universe() != n) fail(ErrorCode::InvalidArgument, "vertex set universe does not match n");
  if (!(gamma > 0 && gamma < 1)) fail(ErrorCode::InvalidArgument, "gamma must lie in (0,1)");
  ReservoirMenu m;
  m.ground = absorbing_vertices.complement();
  m.p = gamma * gamma / 3;
  const PairGraph g13 = large_pair_graph(h, Rational(1, 3));
  const PairNeighborhoods nbh(h);
  const Rational a_pair = Rational(1, 3) - gamma;
  const Rational a_vertex = ratio(7, 10) - gamma;
  const Rational beta = ratio(8, 10) - 3 * gamma;
  for (auto [u, v] : g13.edge_list()) {
    m.constraints.sets.push_back(
        {nbh.of(u, v) - absorbing_vertices, a_pair, "pair " + std::to_string(u) + "," + std::to_string(v)});
    ++m.pair_sets;
  }
  for (Vertex v = 0; v < n; ++v) {
    m.constraints.sets.push_back({g13.neighbors(v) - absorbing_vertices, a_vertex, "vertex " + std::to_string(v)});
    ++m.vertex_sets;
  }
  for (Vertex v = 0; v < n; ++v) {
    PairGraph link(n);
    // Link of v restricted to vertices off A.
    const VertexSet keep = m.ground;
    keep.for_each([&](Vertex a) {
      (nbh.of(v, a) & keep).for_each([&](Vertex b) {
        if (a < b) link.add_edge(a, b);
      });
    });
    m.constraints.graphs.push_back({std::move(link), beta, "link " + std::to_string(v)});
  }
  const Rational g2n = gamma * gamma * n;
  m.constraints.window = std::make_pair(g2n / 4, g2n / 2);
  return m;
}

DegradedCheck check_degraded(const Hypergraph3& h, const PairGraph& g13, const VertexSet& r) {
  const std::size_t n = h.order();
  if (r.universe() != n || g13.order() != n) fail(ErrorCode::InvalidArgument, "universe does not match n");
  const std::uint64_t size = r.count();
  DegradedCheck d;
  const PairNeighborhoods nbh(h);
  // 100 |N(e) ∩ R'| >= 33 |R'|
  for (auto [u, v] : g13.edge_list())
    if (100 * nbh.of(u, v).intersection_count(r) < 33 * size) {
      d.pairs = false;
      d.pair_witness = std::make_pair(u, v);
      break;
    }
  for (Vertex v = 0; v < n; ++v)
    if (100 * g13.neighbors(v).intersection_count(r) < 69 * size) {
      d.vertices = false;
      d.vertex_witness = v;
      break;
    }
  // 1000 deg_{H[R']}(v) >= 799 C(|R'|-1, 2)
  const std::uint64_t bound = 799 * choose2(size ? size - 1 : 0);
  for (auto v = r.first(); v; v = r.next(*v + 1)) {
    std::uint64_t twice = 0;
    r.for_each([&](Vertex a) {
      if (a != *v) twice += (nbh.of(*v, a) & r).count();
    });
    if (1000 * (twice / 2) < bound) {
      d.min_degree = false;
      d.degree_witness = *v;
      break;
    }
  }
  return d;
}

}  // namespace tightham
