#include "tightham/counting.hpp"

#include <algorithm>

#include "tightham/error.hpp"
#include "tightham/random.hpp"

namespace tightham {

std::uint64_t count_triangles(const PairGraph& g) {
  std::uint64_t t = 0;
  for (auto [u, v] : g.edge_list()) t += g.neighbors(u).intersection_count(g.neighbors(v));
  return t / 3;
}

Rational ns_lower_bound(std::uint64_t n, std::uint64_t m) {
  if (n < 3) fail(ErrorCode::InvalidArgument, "triangle bound needs n >= 3");
  Rational b = Rational(m) * (Rational(4) * m - Rational(n) * n) / (Rational(3) * n);
  return b > 0 ? b : Rational(0);
}

Hypergraph3 triangles_of_link_in(const Hypergraph3& h, Vertex x) {
  const PairGraph link = link_graph(h, x);
  Hypergraph3 t(h.order());
  for (auto [u, v] : link.edge_list()) {
    VertexSet common = link.neighbors(u) & link.neighbors(v);
    for (auto w = common.next(v + 1); w; w = common.next(*w + 1)) t.add_edge(u, v, *w);
  }
  return t;
}

namespace {

class KSearch {
 public:
  KSearch(const Hypergraph3& h, std::size_t size, std::array<VertexSet, 3> parts, bool symmetric,
          const KSearchOptions& opt)
      : nbh_(h), h_(size), parts_(std::move(parts)), symmetric_(symmetric), budget_(opt.node_budget),
        rng_(opt.seed), randomize_(opt.randomize) {}

  KSearchResult run() {
    KSearchResult r;
    const std::size_t n = nbh_.order();
    auto cand_a = order(parts_[0]);
    if (choose(cand_a, VertexSet(n), 0)) {
      r.outcome = SearchOutcome::Found;
      r.copy = found_;
    } else {
      r.outcome = out_ ? SearchOutcome::BudgetExhausted : SearchOutcome::Absent;
    }
    r.nodes = nodes_;
    return r;
  }

 private:
  std::vector<Vertex> order(const VertexSet& s) {
    auto v = s.to_vector();
    if (randomize_) rng_.shuffle(v);
    return v;
  }

  bool tick() {
    if (++nodes_ > budget_) out_ = true;
    return !out_;
  }

  // Picks A from `cand` (positions >= from). Symmetric mode requires the
  // minimum of A to be below the minimum of B, which is enforced on B.
  bool choose(const std::vector<Vertex>& cand, VertexSet used, std::size_t from) {
    if (!tick()) return false;
    if (a_.size() == h_) {
      VertexSet common = parts_[2] - used;
      const auto cand_b = order(parts_[1] - used);
      return choose_b(cand_b, std::move(used), std::move(common), 0);
    }
    for (std::size_t i = from; i < cand.size(); ++i) {
      const Vertex v = cand[i];
      if (used.contains(v)) continue;
      a_.push_back(v);
      used.insert(v);
      if (choose(cand, used, i + 1)) return true;
      used.erase(v);
      a_.pop_back();
      if (out_) return false;
    }
    return false;
  }

  bool choose_b(const std::vector<Vertex>& cand, VertexSet used, VertexSet common, std::size_t from) {
    if (!tick()) return false;
    if (b_.size() == h_) {
      common -= used;
      if (common.count() < h_) return false;
      KCopy k;
      k.parts[0] = a_;
      k.parts[1] = b_;
      for (auto c = common.first(); c && k.parts[2].size() < h_; c = common.next(*c + 1)) k.parts[2].push_back(*c);
      for (auto& p : k.parts) std::sort(p.begin(), p.end());
      found_ = std::move(k);
      return true;
    }
    const Vertex amin = *std::min_element(a_.begin(), a_.end());
    for (std::size_t i = from; i < cand.size(); ++i) {
      const Vertex b = cand[i];
      if (used.contains(b) || (symmetric_ && b < amin)) continue;
      VertexSet next = common;
      for (Vertex a : a_) next &= nbh_.of(a, b);
      next -= used;
      next.erase(b);
      if (next.count() < h_) continue;
      b_.push_back(b);
      used.insert(b);
      if (choose_b(cand, used, std::move(next), i + 1)) return true;
      used.erase(b);
      b_.pop_back();
      if (out_) return false;
    }
    return false;
  }

  PairNeighborhoods nbh_;
  std::size_t h_;
  std::array<VertexSet, 3> parts_;
  bool symmetric_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool out_ = false;
  Rng rng_;
  bool randomize_;
  std::vector<Vertex> a_, b_;
  KCopy found_;
};

}  // namespace

KSearchResult find_k_hhh(const Hypergraph3& h, std::size_t hh, const std::optional<std::array<VertexSet, 3>>& parts,
                         const KSearchOptions& opt) {
  if (hh < 1) fail(ErrorCode::InvalidArgument, "K_{h,h,h} needs h >= 1");
  const std::size_t n = h.order();
  std::array<VertexSet, 3> p{VertexSet::full(n), VertexSet::full(n), VertexSet::full(n)};
  if (parts) {
    for (const auto& s : *parts)
      if (s.universe() != n) fail(ErrorCode::InvalidArgument, "part universe does not match n");
    if ((*parts)[0].intersects((*parts)[1]) || (*parts)[0].intersects((*parts)[2]) ||
        (*parts)[1].intersects((*parts)[2]))
      fail(ErrorCode::InvalidArgument, "parts must be pairwise disjoint");
    p = *parts;
  }
  if (n < 3 * hh) {
    KSearchResult r;
    r.outcome = SearchOutcome::Absent;
    return r;
  }
  return KSearch(h, hh, std::move(p), !parts.has_value(), opt).run();
}

bool is_k_hhh(const Hypergraph3& h, const KCopy& k) {
  const std::size_t s = k.parts[0].size();
  if (s == 0 || k.parts[1].size() != s || k.parts[2].size() != s) return false;
  std::vector<Vertex> all;
  for (const auto& p : k.parts) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
  for (Vertex a : k.parts[0])
    for (Vertex b : k.parts[1])
      for (Vertex c : k.parts[2])
        if (!h.has_edge(a, b, c)) return false;
  return true;
}

namespace {

// The 15 ways to split six positions into three unordered pairs.
constexpr std::array<std::array<int, 6>, 15> kPairings = [] {
  std::array<std::array<int, 6>, 15> out{};
  int k = 0;
  for (int a = 1; a < 6; ++a) {
    int rest[4], r = 0;
    for (int i = 1; i < 6; ++i)
      if (i != a) rest[r++] = i;
    for (int j = 1; j < 4; ++j) {
      int o[2], q = 0;
      for (int i = 1; i < 4; ++i)
        if (i != j) o[q++] = rest[i];
      out[k++] = {0, a, rest[0], rest[j], o[0], o[1]};
    }
  }
  return out;
}();

std::uint64_t copies_on(const Hypergraph3& h, const std::array<Vertex, 6>& s) {
  std::uint64_t c = 0;
  for (const auto& pr : kPairings) {
    KCopy k;
    k.parts = {std::vector<Vertex>{s[pr[0]], s[pr[1]]}, {s[pr[2]], s[pr[3]]}, {s[pr[4]], s[pr[5]]}};
    if (is_k_hhh(h, k)) ++c;
  }
  return c;
}

}  // namespace

std::uint64_t count_k222(const Hypergraph3& h, std::size_t cap) {
  const std::size_t n = h.order();
  if (n > cap)
    fail(ErrorCode::Capacity, "exhaustive K_{2,2,2} count supports n <= " + std::to_string(cap) + "; use the estimate");
  std::uint64_t total = 0;
  std::array<Vertex, 6> s{};
  auto rec = [&](auto&& self, std::size_t depth, Vertex from) -> void {
    if (depth == 6) {
      total += copies_on(h, s);
      return;
    }
    for (Vertex v = from; v + (5 - depth) < n; ++v) {
      s[depth] = v;
      self(self, depth + 1, v + 1);
    }
  };
  rec(rec, 0, 0);
  return total;
}

double estimate_k222(const Hypergraph3& h, std::uint64_t samples, std::uint64_t seed) {
  const std::size_t n = h.order();
  if (n < 6 || samples == 0) return 0.0;
  Rng rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    auto v = rng.sample(static_cast<std::uint32_t>(n), 6);
    std::array<Vertex, 6> s{};
    std::copy(v.begin(), v.end(), s.begin());
    hits += copies_on(h, s);
  }
  double sets = 1.0;
  for (int i = 0; i < 6; ++i) sets = sets * static_cast<double>(n - i) / (i + 1);
  return sets * static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace tightham
