#include "tightham/constructions.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "tightham/error.hpp"
#include "tightham/parallel.hpp"
#include "tightham/random.hpp"

namespace tightham {

namespace {

template <class Keep>
Hypergraph3 by_x_count(std::size_t n, std::size_t x, Keep keep) {
  Hypergraph3 h(n);
  for (Vertex c = 2; c < n; ++c)
    for (Vertex b = 1; b < c; ++b)
      for (Vertex a = 0; a < b; ++a) {
        const unsigned k = (a < x) + (b < x) + (c < x);
        if (keep(k)) h.add_edge(a, b, c);
      }
  return h;
}

}  // namespace

std::size_t construction_x_size(int family, std::size_t n) {
  switch (family) {
    case 1: return (n + 1 + 2) / 3;
    case 2: return (2 * n + 2) / 3;
    case 3: return n / 3 - 1;
  }
  fail(ErrorCode::InvalidArgument, "unknown construction family");
}

Hypergraph3 construction_i(std::size_t n) {
  if (n < 4) fail(ErrorCode::InvalidArgument, "construction (i) needs n >= 4");
  return by_x_count(n, construction_x_size(1, n), [](unsigned k) { return k != 2; });
}

Hypergraph3 construction_ii(std::size_t n) {
  if (n < 4) fail(ErrorCode::InvalidArgument, "construction (ii) needs n >= 4");
  return by_x_count(n, construction_x_size(2, n), [](unsigned k) { return k != 2; });
}

Hypergraph3 construction_iii(std::size_t n) {
  if (n < 6) fail(ErrorCode::InvalidArgument, "construction (iii) needs n >= 6 so that X is non-empty");
  return by_x_count(n, construction_x_size(3, n), [](unsigned k) { return k > 0; });
}

Hypergraph3 random_h3(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::InvalidArgument, "edge probability must lie in [0,1]");
  Hypergraph3 h(n);
  Rng rng(seed);
  for (Vertex c = 2; c < n; ++c)
    for (Vertex b = 1; b < c; ++b)
      for (Vertex a = 0; a < b; ++a)
        if (rng.bernoulli(p)) h.add_edge(a, b, c);
  return h;
}

namespace {

ThresholdResult exhaustive(std::size_t n, const ThresholdOptions& opt) {
  ThresholdResult r;
  r.n = n;
  r.exhaustive = true;
  const std::size_t m = choose3(n);
  std::vector<Triple> triples;
  for (std::uint64_t i = 0; i < m; ++i) triples.push_back(triple_unrank(i));
  bool have = false;
  std::vector<std::uint64_t> deg(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::fill(deg.begin(), deg.end(), 0);
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1)
        for (Vertex v : triples[i]) ++deg[v];
    const std::uint64_t d1 = *std::min_element(deg.begin(), deg.end());
    if (have && d1 <= r.best_delta1) continue;
    Hypergraph3 h(n);
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) h.add_edge(triples[i][0], triples[i][1], triples[i][2]);
    ++r.solver_calls;
    auto res = find_tight_ham_cycle(h, opt.solver_budget);
    if (res.verdict == Verdict::Unknown) {
      ++r.solver_unknown;
      continue;
    }
    if (res.verdict == Verdict::Absent) {
      have = true;
      r.best_delta1 = d1;
      r.witness = std::move(h);
    }
  }
  r.certified = r.solver_unknown == 0;
  return r;
}

struct Score {
  std::uint64_t delta1 = 0;
  std::uint64_t at_min = 0;  // vertices attaining delta_1; fewer is better
  std::uint64_t edges = 0;
};

bool better(const Score& a, const Score& b) {
  if (a.delta1 != b.delta1) return a.delta1 > b.delta1;
  if (a.at_min != b.at_min) return a.at_min < b.at_min;
  return a.edges > b.edges;
}

Score score(const Hypergraph3& h) {
  auto deg = vertex_degrees(h);
  Score s;
  s.delta1 = *std::min_element(deg.begin(), deg.end());
  s.at_min = static_cast<std::uint64_t>(std::count(deg.begin(), deg.end(), s.delta1));
  s.edges = h.size();
  return s;
}

struct Climb {
  Hypergraph3 best;
  Score best_score;
  std::uint64_t calls = 0;
  std::uint64_t unknown = 0;
};

// Moves: add a triple at a minimum-degree vertex, or swap one edge for one
// non-edge. A move is kept when the solver certifies absence and the score
// does not drop; a small fraction of sideways moves keeps the walk mobile.
Climb climb(Hypergraph3 start, const ThresholdOptions& opt, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = start.order();
  Climb c;
  c.best = start;
  c.best_score = score(start);
  Hypergraph3 cur = std::move(start);
  Score cur_score = c.best_score;
  for (std::size_t it = 0; it < opt.iterations; ++it) {
    Hypergraph3 next = cur;
    auto deg = vertex_degrees(cur);
    const std::uint64_t d1 = *std::min_element(deg.begin(), deg.end());
    std::vector<Vertex> low;
    for (Vertex v = 0; v < n; ++v)
      if (deg[v] == d1) low.push_back(v);
    const Vertex v = low[rng.below(low.size())];
    std::vector<Triple> missing;
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b)
        if (a != v && b != v && !cur.has_edge(v, a, b)) missing.push_back(sorted_triple(v, a, b));
    if (missing.empty()) continue;
    const Triple add = missing[rng.below(missing.size())];
    next.add_edge(add[0], add[1], add[2]);
    if (rng.bernoulli(0.5) && next.size() > 1) {
      // Drop an edge avoiding every minimum-degree vertex, if there is one.
      std::vector<Triple> removable;
      next.for_each_edge([&](const Triple& t) {
        if (t != add && deg[t[0]] > d1 && deg[t[1]] > d1 && deg[t[2]] > d1) removable.push_back(t);
      });
      if (!removable.empty()) {
        const Triple drop = removable[rng.below(removable.size())];
        next.remove_edge(drop[0], drop[1], drop[2]);
      }
    }
    const Score s = score(next);
    if (better(cur_score, s) && !rng.bernoulli(0.05)) continue;
    ++c.calls;
    auto res = find_tight_ham_cycle(next, opt.solver_budget);
    if (res.verdict == Verdict::Unknown) ++c.unknown;
    if (res.verdict != Verdict::Absent) continue;
    cur = std::move(next);
    cur_score = s;
    if (better(cur_score, c.best_score)) {
      c.best = cur;
      c.best_score = cur_score;
    }
  }
  return c;
}

}  // namespace

ThresholdResult threshold_witness_search(std::size_t n, const ThresholdOptions& opt) {
  if (n < 3) fail(ErrorCode::InvalidArgument, "threshold search needs n >= 3");
  if (n > kThresholdSearchCap)
    fail(ErrorCode::Capacity, "threshold search supports n <= " + std::to_string(kThresholdSearchCap));
  if (n <= kThresholdExhaustiveCap) return exhaustive(n, opt);

  std::vector<Hypergraph3> seeds = {construction_i(n), construction_ii(n)};
  if (n >= 6) seeds.push_back(construction_iii(n));
  ThresholdResult r;
  r.n = n;
  // Seeds must themselves be certified before they count.
  std::vector<Hypergraph3> ok;
  for (auto& s : seeds) {
    ++r.solver_calls;
    auto res = find_tight_ham_cycle(s, opt.solver_budget);
    if (res.verdict == Verdict::Unknown) ++r.solver_unknown;
    if (res.verdict == Verdict::Absent) ok.push_back(std::move(s));
  }
  if (ok.empty()) ok.push_back(Hypergraph3(n));
  const std::size_t restarts = std::max<std::size_t>(opt.restarts, 1);
  std::vector<Climb> out(restarts);
  parallel_for(restarts, [&](std::size_t i) {
    out[i] = climb(ok[i % ok.size()], opt, derive_seed(opt.seed, streams::kThreshold * 1000 + i));
  });
  std::size_t best = 0;
  for (std::size_t i = 0; i < restarts; ++i) {
    r.solver_calls += out[i].calls;
    r.solver_unknown += out[i].unknown;
    if (better(out[i].best_score, out[best].best_score)) best = i;
  }
  r.best_delta1 = out[best].best_score.delta1;
  r.witness = std::move(out[best].best);
  return r;
}

}  // namespace tightham
