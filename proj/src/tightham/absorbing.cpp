#include "tightham/absorbing.hpp"

#include <algorithm>
#include <set>

#include "tightham/error.hpp"
#include "tightham/random.hpp"

namespace tightham {

Hypergraph3 friendly_host(const Hypergraph3& hprime, Vertex x) {
  Hypergraph3 t = triangles_of_link_in(hprime, x);
  Hypergraph3 out(hprime.order());
  t.for_each_edge([&](const Triple& e) {
    if (hprime.has_edge(e)) out.add_edge(e[0], e[1], e[2]);
  });
  return out;
}

std::vector<KCopy> x_friendly_copies(const Hypergraph3& hprime, Vertex x, std::size_t want,
                                     std::uint64_t node_budget, std::uint64_t seed) {
  const Hypergraph3 f = friendly_host(hprime, x);
  std::vector<KCopy> out;
  std::set<std::vector<Vertex>> seen;
  // Each attempt is an independent shuffled search; a repeat just wastes it.
  for (std::size_t attempt = 0; out.size() < want && attempt < 4 * want + 4; ++attempt) {
    KSearchOptions opt;
    opt.node_budget = node_budget;
    opt.seed = derive_seed(seed, attempt);
    auto r = find_k_hhh(f, 2, std::nullopt, opt);
    if (r.outcome == SearchOutcome::Absent) break;
    if (!r.copy || !is_k_hhh(f, *r.copy)) continue;
    auto parts = r.copy->parts;
    std::sort(parts.begin(), parts.end());
    std::vector<Vertex> key;
    for (auto& p : parts) key.insert(key.end(), p.begin(), p.end());
    if (seen.insert(key).second) out.push_back(KCopy{parts});
  }
  return out;
}

namespace {

struct LargePair {
  int part_a, part_b;  // part indices, part_a < part_b
  Vertex a, b;         // a in part_a, b in part_b
};

// Large pairs inside the defining edge {p0[i], p1[i], p2[i]}, lexicographic.
std::vector<LargePair> large_pairs_of(const KCopy& k, int i, const PairGraph& large) {
  std::vector<LargePair> out;
  for (int s = 0; s < 3; ++s)
    for (int t = s + 1; t < 3; ++t) {
      const Vertex a = k.parts[s][i], b = k.parts[t][i];
      if (large.has_edge(a, b)) out.push_back({s, t, a, b});
    }
  std::sort(out.begin(), out.end(), [](const LargePair& x, const LargePair& y) {
    return std::minmax(x.a, x.b) < std::minmax(y.a, y.b);
  });
  return out;
}

}  // namespace

TightPath extract_absorber(const KCopy& k, const PairGraph& large) {
  for (const auto& p : k.parts)
    if (p.size() != 2) fail(ErrorCode::InvalidArgument, "absorber source must be a K_{2,2,2}");
  const auto first = large_pairs_of(k, 0, large);
  const auto second = large_pairs_of(k, 1, large);
  if (first.empty() || second.empty())
    fail(ErrorCode::InvalidArgument, "a defining edge of the K_{2,2,2} has no large pair; the copy is not in H'");
  // Same two parts on both sides: s1 t1 r1 s2 t2 (order 5).
  for (const auto& p : first)
    for (const auto& q : second)
      if (p.part_a == q.part_a && p.part_b == q.part_b) {
        const int r = 3 - p.part_a - p.part_b;
        return TightPath{{p.a, p.b, k.parts[r][0], q.a, q.b}};
      }
  // One shared part S: s1 a1 b2 s2 (order 4).
  const auto& p = first.front();
  const auto& q = second.front();
  const int shared = (p.part_a == q.part_a || p.part_a == q.part_b) ? p.part_a : p.part_b;
  const Vertex s1 = p.part_a == shared ? p.a : p.b, a1 = p.part_a == shared ? p.b : p.a;
  const Vertex s2 = q.part_a == shared ? q.a : q.b, b2 = q.part_a == shared ? q.b : q.a;
  return TightPath{{s1, a1, b2, s2}};
}

VertexSet absorbable_by(const PairNeighborhoods& nbh, const TightPath& p) {
  VertexSet s = VertexSet::full(nbh.order());
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) s &= nbh.of(p.vertices[i], p.vertices[i + 1]);
  for (Vertex v : p.vertices) s.erase(v);
  return s;
}

namespace {

// First pairing (of the 15) that makes the six vertices a K_{2,2,2} of h.
std::optional<KCopy> k222_on(const Hypergraph3& h, const std::array<Vertex, 6>& s) {
  static constexpr int kPair[15][6] = {
      {0, 1, 2, 3, 4, 5}, {0, 1, 2, 4, 3, 5}, {0, 1, 2, 5, 3, 4}, {0, 2, 1, 3, 4, 5}, {0, 2, 1, 4, 3, 5},
      {0, 2, 1, 5, 3, 4}, {0, 3, 1, 2, 4, 5}, {0, 3, 1, 4, 2, 5}, {0, 3, 1, 5, 2, 4}, {0, 4, 1, 2, 3, 5},
      {0, 4, 1, 3, 2, 5}, {0, 4, 1, 5, 2, 3}, {0, 5, 1, 2, 3, 4}, {0, 5, 1, 3, 2, 4}, {0, 5, 1, 4, 2, 3}};
  for (const auto& pr : kPair) {
    KCopy k;
    k.parts = {std::vector<Vertex>{s[pr[0]], s[pr[1]]}, {s[pr[2]], s[pr[3]]}, {s[pr[4]], s[pr[5]]}};
    if (is_k_hhh(h, k)) return k;
  }
  return std::nullopt;
}

}  // namespace

Family select_family(const Hypergraph3& h, const Rational& gamma, std::uint64_t seed, const VertexSet& forbidden,
                     const FamilyOptions& opt) {
  const std::size_t n = h.order();
  if (!(gamma > 0 && gamma <= 1)) fail(ErrorCode::InvalidArgument, "gamma must lie in (0, 1]");
  if (forbidden.universe() != n) fail(ErrorCode::InvalidArgument, "forbidden set universe does not match n");
  std::size_t target = opt.target;
  if (target == 0) target = std::max<std::size_t>(2, ceil(gamma * Rational(n) / 15).convert_to<std::size_t>());

  Family fam;
  fam.coverage.assign(n, 0);
  if (n < 6) return fam;
  const Hypergraph3 hp = h_prime(h);
  const PairGraph large = large_pair_graph(h, Rational(1, 3));
  const PairNeighborhoods nbh(h);
  Rng rng(seed);
  VertexSet used = forbidden;

  // A candidate's value: sum over newly absorbable x of 1/(1+coverage[x]),
  // scaled to integers so ties break on probe order only.
  auto value = [&](const VertexSet& abs) {
    std::uint64_t v = 0;
    abs.for_each([&](Vertex x) { v += 720720 / (1 + fam.coverage[x]); });
    return v;
  };

  std::size_t dry = 0;
  while (fam.records.size() < target && dry < 4) {
    std::vector<Vertex> free;
    used.complement().for_each([&](Vertex v) { free.push_back(v); });
    if (free.size() < 6) break;
    std::optional<AbsorberRecord> best;
    std::uint64_t best_value = 0;
    for (std::size_t probe = 0; probe < opt.probes_per_pick; ++probe) {
      ++fam.probes;
      auto pick = rng.sample(static_cast<std::uint32_t>(free.size()), 6);
      std::array<Vertex, 6> s{};
      for (int i = 0; i < 6; ++i) s[i] = free[pick[i]];
      auto k = k222_on(hp, s);
      if (!k) continue;
      ++fam.hits;
      AbsorberRecord rec;
      rec.path = extract_absorber(*k, large);
      rec.absorbable = absorbable_by(nbh, rec.path);
      std::sort(s.begin(), s.end());
      rec.source = s;
      const std::uint64_t v = value(rec.absorbable);
      if (!best || v > best_value) {
        best_value = v;
        best = std::move(rec);
      }
    }
    if (!best) {
      // Random 6-sets rarely hit in sparse H'; fall back to a directed search
      // on H' minus the used vertices.
      KSearchOptions ko;
      ko.node_budget = opt.search_budget;
      ko.seed = rng.next();
      auto sub = remove_vertices(hp, used);
      auto r2 = find_k_hhh(sub, 2, std::nullopt, ko);
      if (r2.copy) {
        AbsorberRecord rec;
        rec.path = extract_absorber(*r2.copy, large);
        rec.absorbable = absorbable_by(nbh, rec.path);
        std::array<Vertex, 6> s{};
        int i = 0;
        for (auto& p : r2.copy->parts)
          for (Vertex v : p) s[i++] = v;
        std::sort(s.begin(), s.end());
        rec.source = s;
        best = std::move(rec);
      }
    }
    if (!best) {
      ++dry;
      continue;
    }
    dry = 0;
    for (Vertex v : best->source) used.insert(v);
    best->absorbable.for_each([&](Vertex x) { ++fam.coverage[x]; });
    fam.records.push_back(std::move(*best));
  }
  return fam;
}

ConnectFn make_connect_fn(const ConnectorContext& ctx, const RetryPolicy& policy) {
  return [&ctx, policy](OrderedPair e, OrderedPair f, const VertexSet& forbidden) -> std::optional<TightPath> {
    return connect_with_retries(ctx, e, f, forbidden, policy).path;
  };
}

BuildResult build_absorbing_path(const Hypergraph3& h, const std::vector<AbsorberRecord>& family,
                                 const ConnectFn& connect_fn, const VertexSet& forbidden) {
  if (family.empty()) fail(ErrorCode::InvalidArgument, "empty family");
  const std::size_t n = h.order();
  if (forbidden.universe() != n) fail(ErrorCode::InvalidArgument, "forbidden set universe does not match n");
  VertexSet blocked = forbidden;
  for (const auto& r : family)
    for (Vertex v : r.path.vertices) {
      if (blocked.contains(v) && !forbidden.contains(v))
        fail(ErrorCode::InvalidArgument, "family absorbers are not disjoint");
      blocked.insert(v);
    }
  AbsorbingPath a;
  a.path = family.front().path;
  a.absorbers.push_back(family.front());
  a.offsets.push_back(0);
  for (std::size_t i = 1; i < family.size(); ++i) {
    const auto& seq = a.path.vertices;
    const auto& next = family[i].path.vertices;
    const OrderedPair e{seq[seq.size() - 2], seq.back()};
    const OrderedPair f{next[1], next[0]};
    auto c = connect_fn(e, f, blocked);
    if (!c) return BuildResult{std::nullopt, i};
    const auto& cv = c->vertices;
    for (std::size_t j = 2; j + 2 < cv.size(); ++j) {
      a.path.vertices.push_back(cv[j]);
      blocked.insert(cv[j]);
    }
    a.offsets.push_back(a.path.vertices.size());
    a.path.vertices.insert(a.path.vertices.end(), next.begin(), next.end());
    a.absorbers.push_back(family[i]);
  }
  auto check = verify_path(h, a.path);
  if (!check.ok) fail(ErrorCode::Internal, "absorbing path failed verification: " + check.reason);
  return BuildResult{std::move(a), 0};
}

std::vector<int> assign_absorbers(const AbsorbingPath& a, const std::vector<Vertex>& u) {
  const std::size_t k = a.absorbers.size();
  std::vector<int> owner(k, -1), match(u.size(), -1);
  // Kuhn's augmenting paths.
  std::vector<char> seen;
  auto augment = [&](auto&& self, std::size_t x) -> bool {
    for (std::size_t r = 0; r < k; ++r) {
      if (seen[r] || !a.absorbers[r].absorbable.contains(u[x])) continue;
      seen[r] = 1;
      if (owner[r] < 0 || self(self, static_cast<std::size_t>(owner[r]))) {
        owner[r] = static_cast<int>(x);
        match[x] = static_cast<int>(r);
        return true;
      }
    }
    return false;
  };
  for (std::size_t x = 0; x < u.size(); ++x) {
    seen.assign(k, 0);
    augment(augment, x);
  }
  return match;
}

TightPath absorb(const AbsorbingPath& a, const VertexSet& u, const Hypergraph3& h) {
  if (u.universe() != h.order()) fail(ErrorCode::InvalidArgument, "vertex set universe does not match n");
  for (Vertex v : a.path.vertices)
    if (u.contains(v)) fail(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " is already on the path");
  const auto xs = u.to_vector();
  if (xs.empty()) return a.path;
  if (xs.size() > a.capacity())
    fail(ErrorCode::Capacity, std::to_string(xs.size()) + " vertices exceed absorber capacity " +
                                  std::to_string(a.capacity()));
  const auto match = assign_absorbers(a, xs);
  std::string missing;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (match[i] < 0) missing += (missing.empty() ? "" : ",") + std::to_string(xs[i]);
  if (!missing.empty()) fail(ErrorCode::Capacity, "no absorber available for vertices " + missing);

  // Position (offset + 2) receives x: v1 v2 x v3 ...
  std::vector<std::optional<Vertex>> insert_at(a.path.vertices.size() + 1);
  for (std::size_t i = 0; i < xs.size(); ++i) insert_at[a.offsets[match[i]] + 2] = xs[i];
  TightPath out;
  for (std::size_t i = 0; i < a.path.vertices.size(); ++i) {
    if (insert_at[i]) out.vertices.push_back(*insert_at[i]);
    out.vertices.push_back(a.path.vertices[i]);
  }
  auto check = verify_path(h, out);
  if (!check.ok) fail(ErrorCode::Internal, "absorption produced an invalid path: " + check.reason);
  return out;
}

}  // namespace tightham
