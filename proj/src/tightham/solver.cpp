#include "tightham/solver.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "tightham/error.hpp"

namespace tightham {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Present: return "present";
    case Verdict::Absent: return "absent";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(Vertex v) { return Mask{1} << v; }

// nb[a*n+b] = {c : abc in H}
std::vector<Mask> co_neighbour_masks(const Hypergraph3& h) {
  const std::size_t n = h.order();
  std::vector<Mask> nb(n * n, 0);
  h.for_each_edge([&](const Triple& t) {
    auto [a, b, c] = t;
    nb[a * n + b] |= bit(c);
    nb[b * n + a] |= bit(c);
    nb[a * n + c] |= bit(b);
    nb[c * n + a] |= bit(b);
    nb[b * n + c] |= bit(a);
    nb[c * n + b] |= bit(a);
  });
  return nb;
}

struct StateKey {
  Mask mask;
  std::uint32_t last;
  bool operator==(const StateKey&) const = default;
};

struct StateHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    std::uint64_t x = k.mask * 0x9e3779b97f4a7c15ULL ^ (static_cast<std::uint64_t>(k.last) * 0xc2b2ae3d27d4eb4fULL);
    return static_cast<std::size_t>(x ^ (x >> 29));
  }
};

// Depth-first search over orderings anchored at 0 with second vertex v1. A
// state is (visited set, last two vertices); states proven dead are memoised,
// which turns the backtracking into a reachable-state DP.
class CycleSearch {
 public:
  CycleSearch(const Hypergraph3& h, std::uint64_t budget)
      : n_(h.order()), nb_(co_neighbour_masks(h)), budget_(budget),
        full_(n_ == 64 ? ~Mask{0} : (bit(static_cast<Vertex>(n_)) - 1)) {}

  CycleResult run() {
    CycleResult res;
    for (Vertex v1 = 1; v1 < n_ && !out_of_budget_; ++v1) {
      // Reflection symmetry: the last vertex must exceed v1, and it closes {v_last, 0, v1}.
      const Mask above = full_ & ~((bit(v1) << 1) - 1);
      close_ = nb_[v1] & above;  // nb[0*n + v1]
      if (!close_) continue;
      v1_ = v1;
      dead_.clear();
      seq_.assign({0, v1});
      if (dfs(bit(0) | bit(v1), 0, v1)) {
        res.verdict = Verdict::Present;
        res.cycle = TightCycle{seq_};
        res.nodes = nodes_;
        return res;
      }
    }
    res.verdict = out_of_budget_ ? Verdict::Unknown : Verdict::Absent;
    res.nodes = nodes_;
    return res;
  }

 private:
  Mask nb(Vertex a, Vertex b) const { return nb_[static_cast<std::size_t>(a) * n_ + b]; }

  bool dfs(Mask mask, Vertex a, Vertex b) {
    if (++nodes_ > budget_) {
      out_of_budget_ = true;
      return false;
    }
    if (mask == full_) return (nb(a, b) & bit(0)) && (nb(b, 0) & bit(v1_)) && b > v1_;
    const Mask rest = full_ & ~mask;
    if (!(rest & close_)) return false;
    Mask cand = nb(a, b) & rest;
    while (cand) {
      const Vertex c = static_cast<Vertex>(std::countr_zero(cand));
      cand &= cand - 1;
      const Mask next = mask | bit(c);
      const StateKey key{next, b * 64 + c};
      if (dead_.contains(key)) continue;
      seq_.push_back(c);
      if (dfs(next, b, c)) return true;
      seq_.pop_back();
      if (out_of_budget_) return false;
      if (dead_.size() < kMemoCap) dead_.insert(key);
    }
    return false;
  }

  static constexpr std::size_t kMemoCap = 20'000'000;

  std::size_t n_;
  std::vector<Mask> nb_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
  Mask full_;
  Mask close_ = 0;
  Vertex v1_ = 0;
  std::vector<Vertex> seq_;
  std::unordered_set<StateKey, StateHash> dead_;
};

}  // namespace

CycleResult find_tight_ham_cycle(const Hypergraph3& h, std::uint64_t node_budget) {
  const std::size_t n = h.order();
  if (n < 3) fail(ErrorCode::InvalidArgument, "tight Hamiltonian cycles need n >= 3");
  if (n > kSolverMaxVertices)
    fail(ErrorCode::Capacity, "exact cycle search supports n <= " + std::to_string(kSolverMaxVertices));
  if (n == 3) {
    CycleResult r;
    r.nodes = 1;
    if (h.has_edge(0, 1, 2)) {
      r.verdict = Verdict::Present;
      r.cycle = TightCycle{{0, 1, 2}};
    } else {
      r.verdict = Verdict::Absent;
    }
    return r;
  }
  return CycleSearch(h, node_budget).run();
}

namespace {

class PathSearch {
 public:
  PathSearch(const Hypergraph3& h, OrderedPair e, OrderedPair f, OrderBounds b, VertexSet interior,
             std::uint64_t budget)
      : h_(h), f_(f), bounds_(b), interior_(std::move(interior)), budget_(budget) {
    seq_ = {e.first, e.second};
  }

  PathResult run() {
    PathResult r;
    if (dfs()) {
      r.verdict = Verdict::Present;
      seq_.push_back(f_.second);
      seq_.push_back(f_.first);
      r.path = TightPath{seq_};
    } else {
      r.verdict = out_of_budget_ ? Verdict::Unknown : Verdict::Absent;
    }
    r.nodes = nodes_;
    return r;
  }

 private:
  bool dfs() {
    if (++nodes_ > budget_) {
      out_of_budget_ = true;
      return false;
    }
    const std::size_t k = seq_.size();
    const Vertex a = seq_[k - 2], b = seq_[k - 1];
    if (k + 2 >= bounds_.min_order && k + 2 <= bounds_.max_order && h_.has_edge(a, b, f_.second) &&
        h_.has_edge(b, f_.second, f_.first))
      return true;
    if (k + 3 > bounds_.max_order) return false;
    for (auto c = interior_.first(); c; c = interior_.next(*c + 1)) {
      if (!h_.has_edge(a, b, *c)) continue;
      interior_.erase(*c);
      seq_.push_back(*c);
      if (dfs()) return true;
      seq_.pop_back();
      interior_.insert(*c);
      if (out_of_budget_) return false;
    }
    return false;
  }

  const Hypergraph3& h_;
  OrderedPair f_;
  OrderBounds bounds_;
  VertexSet interior_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
  std::vector<Vertex> seq_;
};

}  // namespace

PathResult find_tight_path(const Hypergraph3& h, OrderedPair e, OrderedPair f, OrderBounds bounds,
                           const VertexSet& allowed, std::uint64_t node_budget) {
  const std::size_t n = h.order();
  if (allowed.universe() != n) fail(ErrorCode::InvalidArgument, "allowed set universe does not match n");
  const Vertex ends[4] = {e.first, e.second, f.first, f.second};
  for (Vertex v : ends)
    if (v >= n) fail(ErrorCode::OutOfRange, "endpair vertex " + std::to_string(v) + " out of range");
  if (e.first == e.second || f.first == f.second) fail(ErrorCode::InvalidArgument, "endpair repeats a vertex");
  if (e.first == f.first || e.first == f.second || e.second == f.first || e.second == f.second)
    fail(ErrorCode::InvalidArgument, "endpairs must be disjoint");
  for (Vertex v : ends)
    if (!allowed.contains(v)) fail(ErrorCode::InvalidArgument, "endpair vertex " + std::to_string(v) + " not allowed");
  if (bounds.min_order > bounds.max_order) fail(ErrorCode::InvalidArgument, "empty order range");
  VertexSet interior = allowed;
  for (Vertex v : ends) interior.erase(v);
  bounds.min_order = std::max<std::size_t>(bounds.min_order, 4);
  if (bounds.max_order < 4) {
    PathResult r;
    r.verdict = Verdict::Absent;
    return r;
  }
  return PathSearch(h, e, f, bounds, std::move(interior), node_budget).run();
}

namespace {

class MatchingSearch {
 public:
  MatchingSearch(const Hypergraph3& h, std::uint64_t budget) : n_(h.order()), budget_(budget) {
    h.for_each_edge([&](const Triple& t) { edges_.push_back(bit(t[0]) | bit(t[1]) | bit(t[2])); });
    by_vertex_.resize(n_);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      Mask m = edges_[i];
      while (m) {
        by_vertex_[std::countr_zero(m)].push_back(i);
        m &= m - 1;
      }
    }
  }

  MatchingResult run() {
    // Greedy lower bound.
    Mask used = 0;
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (!(edges_[i] & used)) {
        used |= edges_[i];
        best_.push_back(i);
      }
    const Mask full = n_ == 64 ? ~Mask{0} : (bit(static_cast<Vertex>(n_)) - 1);
    rec(full);
    MatchingResult r;
    for (std::size_t i : best_) {
      Mask m = edges_[i];
      Triple t{};
      for (int k = 0; k < 3; ++k) {
        t[k] = static_cast<Vertex>(std::countr_zero(m));
        m &= m - 1;
      }
      r.edges.push_back(t);
    }
    r.certified = !out_of_budget_;
    r.nodes = nodes_;
    return r;
  }

 private:
  void rec(Mask free) {
    if (out_of_budget_) return;
    if (++nodes_ > budget_) {
      out_of_budget_ = true;
      return;
    }
    Mask coverable = 0;
    for (Mask e : edges_)
      if ((e & free) == e) coverable |= e;
    const std::size_t bound = cur_.size() + static_cast<std::size_t>(std::popcount(coverable)) / 3;
    if (bound <= best_.size()) return;
    if (!coverable) {
      best_ = cur_;
      return;
    }
    const Vertex v = static_cast<Vertex>(std::countr_zero(coverable));
    for (std::size_t i : by_vertex_[v]) {
      if ((edges_[i] & free) != edges_[i]) continue;
      cur_.push_back(i);
      rec(free & ~edges_[i]);
      cur_.pop_back();
      if (out_of_budget_) return;
    }
    rec(free & ~bit(v));
  }

  std::size_t n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
  std::vector<Mask> edges_;
  std::vector<std::vector<std::size_t>> by_vertex_;
  std::vector<std::size_t> best_, cur_;
};

}  // namespace

MatchingResult max_matching(const Hypergraph3& h, std::uint64_t node_budget) {
  if (h.order() > kSolverMaxVertices)
    fail(ErrorCode::Capacity, "exact matching supports n <= " + std::to_string(kSolverMaxVertices));
  return MatchingSearch(h, node_budget).run();
}

}  // namespace tightham
