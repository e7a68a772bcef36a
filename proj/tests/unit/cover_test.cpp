#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "support/oracles.hpp"
#include "tightham/cover.hpp"
#include "tightham/error.hpp"
#include "tightham/random.hpp"

using namespace tightham;

namespace {

std::vector<Vertex> range(Vertex from, Vertex to) {
  std::vector<Vertex> v(to - from);
  std::iota(v.begin(), v.end(), from);
  return v;
}

Hypergraph3 tripartite(std::size_t n, const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                       const std::vector<Vertex>& c, double p, std::uint64_t seed) {
  Hypergraph3 h(n);
  Rng rng(seed);
  for (Vertex x : a)
    for (Vertex y : b)
      for (Vertex z : c)
        if (rng.bernoulli(p)) h.add_edge(x, y, z);
  return h;
}

// Direct definition: every A_i with |A_i| >= eps |V_i|, densities compared as rationals.
bool brute_regular(const Hypergraph3& h, const std::array<std::vector<Vertex>, 3>& v, const Rational& eps) {
  const oracle::EdgeSet e(h);
  auto dens = [&](const std::array<std::vector<Vertex>, 3>& a) {
    std::uint64_t k = 0;
    for (Vertex x : a[0])
      for (Vertex y : a[1])
        for (Vertex z : a[2]) k += e.has(x, y, z);
    return Rational(k) / Rational(a[0].size() * a[1].size() * a[2].size());
  };
  const Rational d = dens(v);
  auto subsets = [&](const std::vector<Vertex>& s) {
    std::vector<std::vector<Vertex>> out;
    for (std::uint32_t m = 1; m < (1u << s.size()); ++m) {
      std::vector<Vertex> x;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (m >> i & 1) x.push_back(s[i]);
      if (Rational(x.size()) >= eps * s.size()) out.push_back(x);
    }
    return out;
  };
  const auto s0 = subsets(v[0]), s1 = subsets(v[1]), s2 = subsets(v[2]);
  for (const auto& a : s0)
    for (const auto& b : s1)
      for (const auto& c : s2) {
        Rational dev = dens({a, b, c}) - d;
        if (dev < 0) dev = -dev;
        if (dev > eps) return false;
      }
  return true;
}

bool is_witness(const Hypergraph3& h, const std::array<std::vector<Vertex>, 3>& v, const RegWitness& w,
                const Rational& eps) {
  const oracle::EdgeSet e(h);
  auto count = [&](const std::array<std::vector<Vertex>, 3>& a) {
    std::uint64_t k = 0;
    for (Vertex x : a[0])
      for (Vertex y : a[1])
        for (Vertex z : a[2]) k += e.has(x, y, z);
    return k;
  };
  for (int i = 0; i < 3; ++i) {
    if (Rational(w.sets[i].size()) < eps * v[i].size()) return false;
    const std::set<Vertex> in(v[i].begin(), v[i].end());
    for (Vertex x : w.sets[i])
      if (!in.count(x)) return false;
  }
  const Rational d = Rational(count(v)) / Rational(v[0].size() * v[1].size() * v[2].size());
  const Rational dw = Rational(count(w.sets)) / Rational(w.sets[0].size() * w.sets[1].size() * w.sets[2].size());
  Rational dev = dw - d;
  if (dev < 0) dev = -dev;
  return dev > eps && dw == w.density;
}

bool equitable(const RegPartition& p, std::size_t n) {
  std::size_t lo = SIZE_MAX, hi = 0, total = 0;
  std::vector<int> seen(n, 0);
  for (const auto& c : p.classes) {
    lo = std::min(lo, c.size());
    hi = std::max(hi, c.size());
    total += c.size();
    for (Vertex v : c) ++seen[v];
  }
  for (int s : seen)
    if (s != 1) return false;
  return total == n && hi <= lo + 1;
}

// Both halves {0..n/2-1} and the rest carry every inside triple; no crossing triples.
Hypergraph3 two_blocks(std::size_t n) {
  Hypergraph3 h(n);
  const Vertex half = static_cast<Vertex>(n / 2);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c)
        if ((a < half) == (b < half) && (b < half) == (c < half)) h.add_edge(a, b, c);
  return h;
}

double purity(const RegPartition& p, std::size_t n) {
  std::size_t good = 0;
  for (const auto& c : p.classes) {
    std::size_t low = 0;
    for (Vertex v : c) low += v < n / 2;
    good += std::max(low, c.size() - low);
  }
  return static_cast<double>(good) / static_cast<double>(n);
}

}  // namespace

TEST(EpsOf, PicksTheSmallerTerm) {
  EXPECT_EQ(eps_of(ratio(1, 10), ratio(1, 9)), Rational(1, 32400));
  EXPECT_EQ(eps_of(ratio(1, 100), Rational(1)), Rational(1, 40000));
  EXPECT_EQ(eps_of(Rational(2), Rational(20)), Rational(1));
  EXPECT_THROW(eps_of(Rational(0), Rational(1)), Error);
}

TEST(RegularityCheck, CompleteTripartiteIsRegular) {
  const auto a = range(0, 6), b = range(6, 12), c = range(12, 18);
  const auto h = tripartite(18, a, b, c, 1.0, 1);
  auto ex = regularity_check(h, a, b, c, ratio(1, 3), {RegMode::Exhaustive});
  EXPECT_EQ(ex.verdict, RegVerdict::Regular);
  EXPECT_EQ(ex.density, Rational(1));
  auto sm = regularity_check(h, a, b, c, ratio(1, 3));
  EXPECT_EQ(sm.verdict, RegVerdict::RegularSampled);
  EXPECT_EQ(sm.probes, 64u);
}

TEST(RegularityCheck, HalfSplitIsIrregularWithTheHalfAsWitness) {
  const auto a = range(0, 6), b = range(6, 12), c = range(12, 18);
  Hypergraph3 h(18);
  for (Vertex x : a)
    for (Vertex y : b)
      for (Vertex z : c)
        if (x < 3) h.add_edge(x, y, z);
  auto r = regularity_check(h, a, b, c, ratio(1, 3), {RegMode::Exhaustive});
  ASSERT_EQ(r.verdict, RegVerdict::Irregular);
  ASSERT_TRUE(r.witness);
  const auto& w = r.witness->sets;
  EXPECT_TRUE(w[0] == range(0, 3) || w[0] == range(3, 6));
  EXPECT_TRUE(is_witness(h, {a, b, c}, *r.witness, ratio(1, 3)));
  auto s = regularity_check(h, a, b, c, ratio(1, 3));
  ASSERT_EQ(s.verdict, RegVerdict::Irregular);
  EXPECT_TRUE(s.witness->sets[0] == range(0, 3) || s.witness->sets[0] == range(3, 6));
}

TEST(RegularityCheck, ExhaustiveAgreesWithTheDefinition) {
  const auto a = range(0, 4), b = range(4, 8), c = range(8, 12);
  int irregular = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const double p = 0.2 + 0.01 * static_cast<double>(seed);
    const auto h = tripartite(12, a, b, c, p, seed);
    for (const Rational eps : {ratio(1, 4), ratio(1, 2)}) {
      auto r = regularity_check(h, a, b, c, eps, {RegMode::Exhaustive});
      const bool reg = brute_regular(h, {a, b, c}, eps);
      EXPECT_EQ(r.verdict == RegVerdict::Regular, reg) << "seed " << seed;
      if (!reg) {
        ++irregular;
        EXPECT_TRUE(is_witness(h, {a, b, c}, *r.witness, eps));
      }
    }
  }
  EXPECT_GT(irregular, 0);
}

TEST(RegularityCheck, SampledWitnessesAreGenuine) {
  const auto a = range(0, 20), b = range(20, 40), c = range(40, 60);
  int found = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Hypergraph3 h = tripartite(60, a, b, c, 0.3, seed);
    // Plant a dense corner.
    for (Vertex x = 0; x < 8; ++x)
      for (Vertex y = 20; y < 28; ++y)
        for (Vertex z = 40; z < 48; ++z) h.add_edge(x, y, z);
    RegCheckOptions o;
    o.seed = seed;
    auto r = regularity_check(h, a, b, c, ratio(1, 4), o);
    if (r.verdict == RegVerdict::Irregular) {
      ++found;
      EXPECT_TRUE(is_witness(h, {a, b, c}, *r.witness, ratio(1, 4)));
    }
  }
  EXPECT_EQ(found, 20);
}

TEST(RegularityCheck, RandomTripartitePassesSampledCheck) {
  const auto a = range(0, 30), b = range(30, 60), c = range(60, 90);
  int pass = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto h = tripartite(90, a, b, c, 0.5, 1000 + seed);
    RegCheckOptions o;
    o.seed = seed;
    pass += regularity_check(h, a, b, c, ratio(1, 4), o).verdict == RegVerdict::RegularSampled;
  }
  EXPECT_EQ(pass, 40);
}

TEST(RegularityCheck, RejectsBadParts) {
  const auto h = Hypergraph3::complete(12);
  EXPECT_THROW(regularity_check(h, range(0, 2), range(2, 4), range(4, 6), ratio(1, 4)), Error);
  EXPECT_THROW(regularity_check(h, range(0, 4), range(3, 7), range(8, 12), ratio(1, 2)), Error);
  const auto big = Hypergraph3::complete(36);
  EXPECT_THROW(regularity_check(big, range(0, 12), range(12, 24), range(24, 36), ratio(1, 2), {RegMode::Exhaustive}),
               Error);
}

TEST(WeakRegularize, CompleteGraphStopsAtT0) {
  const auto h = Hypergraph3::complete(30);
  auto p = weak_regularize(h, ratio(3, 10), 3, 1);
  EXPECT_TRUE(p.certified);
  EXPECT_EQ(p.t(), 3u);
  EXPECT_EQ(p.rounds, 0u);
  EXPECT_TRUE(equitable(p, 30));
  EXPECT_EQ(p.triples.size(), 1u);
  EXPECT_EQ(p.triples[0].density, Rational(1));
}

TEST(WeakRegularize, RandomGraphIsRegularAtT0) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto h = oracle::random_graph(120, 0.5, seed);
    auto p = weak_regularize(h, ratio(3, 10), 3, seed);
    EXPECT_TRUE(p.certified) << seed;
    EXPECT_EQ(p.t(), 3u);
    EXPECT_EQ(p.irregular_count(), 0u);
  }
}

TEST(WeakRegularize, PlantedBlocksAreSeparatedWithinTwoRounds) {
  const std::size_t n = 120;
  const auto h = two_blocks(n);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RegularizeOptions o;
    o.max_rounds = 2;
    auto p = weak_regularize(h, ratio(3, 10), 3, seed, o);
    EXPECT_GE(p.rounds, 1u);
    EXPECT_TRUE(equitable(p, n));
    EXPECT_GE(purity(p, n), 0.95) << "seed " << seed;
  }
}

TEST(WeakRegularize, EnergyNeverDecreases) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Hypergraph3 h = seed % 2 ? two_blocks(90) : oracle::random_graph(90, 0.5, seed);
    // A dense corner makes the random instances irregular too.
    for (Vertex a = 0; a < 20; ++a)
      for (Vertex b = a + 1; b < 20; ++b)
        for (Vertex c = b + 1; c < 20; ++c) h.add_edge(a, b, c);
    RegularizeOptions o;
    o.t_cap = 30;
    auto p = weak_regularize(h, ratio(1, 5), 4, seed, o);
    ASSERT_EQ(p.energy.size(), p.rounds + 1);
    for (std::size_t i = 1; i < p.energy.size(); ++i) EXPECT_GT(p.energy[i], p.energy[i - 1]);
    EXPECT_EQ(p.energy.back(), partition_energy(h, p.classes));
    EXPECT_TRUE(equitable(p, 90));
  }
}

TEST(WeakRegularize, RejectsTooFewVertices) {
  const auto h = Hypergraph3::complete(20);
  EXPECT_THROW(weak_regularize(h, ratio(1, 10), 3, 1), Error);
  EXPECT_THROW(weak_regularize(h, ratio(1, 2), 2, 1), Error);
}

TEST(ClusterGraph, CompleteAndEmpty) {
  const auto full = weak_regularize(Hypergraph3::complete(60), ratio(1, 4), 6, 3);
  const auto k = cluster_graph(full, ratio(1, 9));
  EXPECT_EQ(k.edges.size(), 20u);
  const auto none = weak_regularize(Hypergraph3(60), ratio(1, 4), 6, 3);
  EXPECT_TRUE(cluster_graph(none, ratio(1, 9)).edges.empty());
}

TEST(ClusterGraph, DensityFlagMatchesRecount) {
  const auto h = oracle::random_graph(60, 0.05, 9);
  const auto p = weak_regularize(h, ratio(1, 4), 5, 2);
  const Rational lambda = Rational(1);  // threshold 1/12 sits inside the spread of densities
  const auto k = cluster_graph(p, lambda);
  const oracle::EdgeSet e(h);
  for (std::size_t i = 0; i < p.triples.size(); ++i) {
    const auto& s = p.triples[i];
    std::uint64_t cnt = 0;
    for (Vertex x : p.classes[s.classes[0]])
      for (Vertex y : p.classes[s.classes[1]])
        for (Vertex z : p.classes[s.classes[2]]) cnt += e.has(x, y, z);
    const Rational d = Rational(cnt) / Rational(p.classes[s.classes[0]].size() * p.classes[s.classes[1]].size() *
                                                p.classes[s.classes[2]].size());
    EXPECT_EQ(d, s.density);
    EXPECT_EQ(k.in_d[i], d >= lambda / 12);
  }
}

TEST(ClusterDegree, VerbatimBoundAtTNine) {
  const auto h = Hypergraph3::complete(90);
  const auto p = weak_regularize(h, ratio(1, 10), 9, 4);
  ASSERT_EQ(p.t(), 9u);
  auto c = check_cluster_degree(h, p, ratio(1, 9));
  EXPECT_EQ(c.status, ClusterDegreeCheck::Status::Holds);
  EXPECT_EQ(c.min_degree, 28u);
  EXPECT_EQ(c.bound, Rational(17, 27) * 81 / 2);
}

TEST(ClusterDegree, DenseRandomGraphAtTNine) {
  const auto h = oracle::random_graph(90, 0.9, 17);
  const auto p = weak_regularize(h, ratio(1, 10), 9, 4);
  auto c = check_cluster_degree(h, p, ratio(1, 9));
  EXPECT_EQ(c.status, ClusterDegreeCheck::Status::Holds);
}

TEST(ClusterDegree, SmallTCannotMeetTheVerbatimBound) {
  // C(5,2) = 10 < (5/9 + 2/27) * 18: the display only holds asymptotically.
  const auto h = Hypergraph3::complete(60);
  const auto p = weak_regularize(h, ratio(1, 10), 6, 4);
  auto c = check_cluster_degree(h, p, ratio(1, 9));
  EXPECT_EQ(c.status, ClusterDegreeCheck::Status::Violated);
  EXPECT_EQ(c.min_degree, 10u);
}

TEST(ClusterDegree, SparseGraphIsInapplicable) {
  const auto h = oracle::random_graph(60, 0.3, 1);
  const auto p = weak_regularize(h, ratio(1, 10), 6, 4);
  EXPECT_EQ(check_cluster_degree(h, p, ratio(1, 9)).status, ClusterDegreeCheck::Status::Inapplicable);
}

TEST(ClusterMatching, CompleteEmptyAndRandom) {
  ClusterGraph k;
  k.t = 6;
  for (Vertex a = 0; a < 6; ++a)
    for (Vertex b = a + 1; b < 6; ++b)
      for (Vertex c = b + 1; c < 6; ++c) k.edges.push_back({a, b, c});
  EXPECT_EQ(cluster_matching(k).size(), 2u);
  k.edges.clear();
  EXPECT_TRUE(cluster_matching(k).empty());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto h = oracle::random_graph(10, 0.15, seed);
    ClusterGraph r;
    r.t = 10;
    r.edges = h.edge_list();
    const auto m = cluster_matching(r);
    EXPECT_EQ(m.size(), oracle::max_matching(h));
    EXPECT_TRUE(verify_matching(h, m).ok);
  }
}

TEST(PackKlll, CompleteClassesPackExactly) {
  const auto a = range(0, 6), b = range(6, 12), c = range(12, 18);
  const auto h = tripartite(18, a, b, c, 1.0, 1);
  auto pk = pack_klll(h, a, b, c, 2);
  EXPECT_EQ(pk.copies.size(), 3u);
  EXPECT_EQ(pk.leftover, (std::array<std::size_t, 3>{0, 0, 0}));
  EXPECT_TRUE(pk.maximal);
  for (const auto& q : pk.copies) EXPECT_TRUE(is_k_hhh(h, q));
}

TEST(PackKlll, EmptyGraphPacksNothing) {
  auto pk = pack_klll(Hypergraph3(18), range(0, 6), range(6, 12), range(12, 18), 2);
  EXPECT_TRUE(pk.copies.empty());
  EXPECT_TRUE(pk.maximal);
  EXPECT_EQ(pk.leftover[0], 6u);
}

TEST(PackKlll, LeftoversHoldNoFurtherCopy) {
  const auto a = range(0, 15), b = range(15, 30), c = range(30, 45);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto h = tripartite(45, a, b, c, 0.6, seed);
    auto pk = pack_klll(h, a, b, c, 2);
    ASSERT_TRUE(pk.maximal);
    std::array<VertexSet, 3> rest{VertexSet::of(45, a), VertexSet::of(45, b), VertexSet::of(45, c)};
    std::set<Vertex> seen;
    for (const auto& q : pk.copies) {
      EXPECT_TRUE(is_k_hhh(h, q));
      for (int i = 0; i < 3; ++i)
        for (Vertex v : q.parts[i]) {
          EXPECT_TRUE(rest[i].contains(v));
          rest[i].erase(v);
          EXPECT_TRUE(seen.insert(v).second);
        }
    }
    for (int i = 0; i < 3; ++i) EXPECT_EQ(rest[i].count(), pk.leftover[i]);
    EXPECT_EQ(find_k_hhh(h, 2, rest).outcome, SearchOutcome::Absent);
  }
}

TEST(CoverKlll, CompleteGraphIsFullyCovered) {
  auto r = cover_klll(Hypergraph3::complete(24));
  EXPECT_EQ(r.covered, 24u);
  EXPECT_EQ(r.coverage, Rational(1));
  EXPECT_TRUE(r.target_met);
  EXPECT_EQ(r.copies.size(), 4u);
}

TEST(CoverKlll, EmptyGraphCoversNothing) {
  auto r = cover_klll(Hypergraph3(24));
  EXPECT_EQ(r.covered, 0u);
  EXPECT_EQ(r.coverage, Rational(0));
  EXPECT_FALSE(r.target_met);
}

TEST(CoverKlll, RespectsTheActiveSet) {
  const auto h = Hypergraph3::complete(30);
  VertexSet act(30);
  for (Vertex v = 0; v < 30; v += 2) act.insert(v);
  auto r = cover_klll(h, {}, act);
  EXPECT_EQ(r.active, 15u);
  EXPECT_EQ(r.covered, 12u);
  for (const auto& q : r.copies)
    for (const auto& part : q.parts)
      for (Vertex v : part) EXPECT_TRUE(act.contains(v));
}

TEST(CoverKlll, DenseRandomGreedyCoverage) {
  const auto h = oracle::random_graph(120, 0.9, 3);
  CoverOptions o;
  o.seed = 3;
  auto r = cover_klll(h, o);
  EXPECT_GE(r.coverage, ratio(9, 10));
  std::set<Vertex> seen;
  for (const auto& q : r.copies) {
    EXPECT_TRUE(is_k_hhh(h, q));
    for (const auto& part : q.parts)
      for (Vertex v : part) EXPECT_TRUE(seen.insert(v).second);
  }
  EXPECT_EQ(seen.size(), r.covered);
}

TEST(CoverKlll, RegularityModeOnPlantedBlocks) {
  const auto h = two_blocks(120);
  CoverOptions o;
  o.mode = CoverMode::Regularity;
  o.epsilon = ratio(3, 10);
  o.t0 = 6;
  o.seed = 5;
  auto r = cover_klll(h, o);
  ASSERT_TRUE(r.partition);
  EXPECT_FALSE(r.matching.empty());
  EXPECT_GT(r.covered, 0u);
  std::set<Vertex> seen;
  for (const auto& q : r.copies) {
    EXPECT_TRUE(is_k_hhh(h, q));
    for (const auto& part : q.parts)
      for (Vertex v : part) EXPECT_TRUE(seen.insert(v).second);
  }
}

TEST(CoverKlll, PaperEpsilonNeedsFarMoreVertices) {
  CoverOptions o;
  o.mode = CoverMode::Regularity;
  EXPECT_THROW(cover_klll(Hypergraph3::complete(60), o), Error);
}

TEST(KlllPath, AllPairsLargeGivesFullOrder) {
  KCopy q{{range(0, 2), range(2, 4), range(4, 6)}};
  PairGraph all(6);
  for (Vertex a = 0; a < 6; ++a)
    for (Vertex b = a + 1; b < 6; ++b) all.add_edge(a, b);
  auto p = klll_path(q, all);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->order(), 6u);
  EXPECT_TRUE(verify_path(Hypergraph3::complete(6), *p).ok);
}

TEST(KlllPath, SingleClassPairDropsOneVertex) {
  // Large pairs only between parts 0 and 1.
  KCopy q{{range(0, 3), range(3, 6), range(6, 9)}};
  PairGraph g(9);
  for (Vertex a = 0; a < 3; ++a)
    for (Vertex b = 3; b < 6; ++b) g.add_edge(a, b);
  auto p = klll_path(q, g);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->order(), 8u);
  EXPECT_TRUE(g.has_edge(p->start_pair().first, p->start_pair().second));
  EXPECT_TRUE(g.has_edge(p->end_pair().first, p->end_pair().second));
  // Every window crosses the three parts.
  for (std::size_t i = 0; i + 2 < p->order(); ++i) {
    std::set<Vertex> parts{p->vertices[i] / 3, p->vertices[i + 1] / 3, p->vertices[i + 2] / 3};
    EXPECT_EQ(parts.size(), 3u);
  }
}

TEST(KlllPath, NoLargePairsNoPath) {
  KCopy q{{range(0, 2), range(2, 4), range(4, 6)}};
  EXPECT_FALSE(klll_path(q, PairGraph(6)));
}
