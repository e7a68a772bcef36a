#include "tightham/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tightham/error.hpp"

namespace tightham {

namespace {

void check_vertex(const Hypergraph3& h, Vertex v) {
  if (v >= h.order())
    fail(ErrorCode::OutOfRange, "vertex " + std::to_string(v) + " out of range for n=" + std::to_string(h.order()));
}

// Largest x with choose_k(x) <= r, for k = 3 or 2.
std::uint64_t colex_digit(std::uint64_t r, int k) {
  auto f = [k](std::uint64_t x) { return k == 3 ? choose3(x) : choose2(x); };
  double guess = k == 3 ? std::cbrt(6.0 * static_cast<double>(r)) : std::sqrt(2.0 * static_cast<double>(r));
  std::uint64_t x = static_cast<std::uint64_t>(guess) + 2;
  while (f(x) > r) --x;
  while (f(x + 1) <= r) ++x;
  return x;
}

}  // namespace

Triple triple_unrank(std::uint64_t rank) {
  std::uint64_t c = colex_digit(rank, 3);
  rank -= choose3(c);
  std::uint64_t b = colex_digit(rank, 2);
  rank -= choose2(b);
  return {static_cast<Vertex>(rank), static_cast<Vertex>(b), static_cast<Vertex>(c)};
}

Hypergraph3::Hypergraph3(std::size_t n) : n_(n) {
  if (n > kMaxVertices)
    fail(ErrorCode::Capacity, "n=" + std::to_string(n) + " exceeds the build cap of " + std::to_string(kMaxVertices));
  bits_.assign((choose3(n) + 63) / 64, 0);
}

Hypergraph3 Hypergraph3::complete(std::size_t n) {
  Hypergraph3 h(n);
  std::uint64_t total = choose3(n);
  for (auto& w : h.bits_) w = ~std::uint64_t{0};
  if (total % 64 && !h.bits_.empty()) h.bits_.back() = (std::uint64_t{1} << (total % 64)) - 1;
  h.edges_ = total;
  return h;
}

void Hypergraph3::set_edge(Vertex a, Vertex b, Vertex c, bool present) {
  if (a >= n_ || b >= n_ || c >= n_)
    fail(ErrorCode::OutOfRange, "edge {" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                                    "} out of range for n=" + std::to_string(n_));
  if (a == b || b == c || a == c)
    fail(ErrorCode::InvalidArgument, "edge {" + std::to_string(a) + "," + std::to_string(b) + "," +
                                         std::to_string(c) + "} repeats a vertex");
  auto t = sorted_triple(a, b, c);
  std::uint64_t r = triple_rank(t[0], t[1], t[2]);
  std::uint64_t mask = std::uint64_t{1} << (r & 63);
  bool had = bits_[r >> 6] & mask;
  if (present && !had) {
    bits_[r >> 6] |= mask;
    ++edges_;
  } else if (!present && had) {
    bits_[r >> 6] &= ~mask;
    --edges_;
  }
}

std::vector<Triple> Hypergraph3::edge_list() const {
  std::vector<Triple> out;
  out.reserve(edges_);
  for_each_edge([&](const Triple& t) { out.push_back(t); });
  return out;
}

Hypergraph3 Hypergraph3::from_words(std::size_t n, std::vector<std::uint64_t> words) {
  Hypergraph3 h(n);
  if (words.size() != h.bits_.size()) fail(ErrorCode::InvalidArgument, "bitmap length does not match n");
  std::uint64_t total = choose3(n);
  if (total % 64 && !words.empty() && (words.back() >> (total % 64)))
    fail(ErrorCode::Parse, "bitmap has bits set past C(n,3)");
  std::uint64_t e = 0;
  for (auto w : words) e += static_cast<std::uint64_t>(std::popcount(w));
  h.bits_ = std::move(words);
  h.edges_ = e;
  return h;
}

void PairGraph::add_edge(Vertex u, Vertex v) {
  if (u == v) fail(ErrorCode::InvalidArgument, "self-loop at " + std::to_string(u));
  adj_.at(u).insert(v);
  adj_.at(v).insert(u);
}

void PairGraph::remove_edge(Vertex u, Vertex v) {
  if (u == v) return;
  adj_.at(u).erase(v);
  adj_.at(v).erase(u);
}

std::uint64_t PairGraph::edge_count() const {
  std::uint64_t s = 0;
  for (const auto& a : adj_) s += a.count();
  return s / 2;
}

std::vector<std::pair<Vertex, Vertex>> PairGraph::edge_list() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < n_; ++u)
    adj_[u].for_each([&](Vertex v) {
      if (u < v) out.emplace_back(u, v);
    });
  return out;
}

bool PairGraph::is_subgraph_of(const PairGraph& o) const {
  if (o.n_ != n_) return false;
  for (Vertex u = 0; u < n_; ++u)
    if (!adj_[u].is_subset_of(o.adj_[u])) return false;
  return true;
}

PairNeighborhoods::PairNeighborhoods(const Hypergraph3& h) : n_(h.order()) {
  table_.assign(n_ * n_, VertexSet(n_));
  h.for_each_edge([&](const Triple& t) {
    auto [a, b, c] = t;
    table_[a * n_ + b].insert(c);
    table_[b * n_ + a].insert(c);
    table_[a * n_ + c].insert(b);
    table_[c * n_ + a].insert(b);
    table_[b * n_ + c].insert(a);
    table_[c * n_ + b].insert(a);
  });
}

std::uint64_t deg_vertex(const Hypergraph3& h, Vertex v) {
  check_vertex(h, v);
  std::uint64_t d = 0;
  const Vertex n = static_cast<Vertex>(h.order());
  for (Vertex u = 0; u < n; ++u) {
    if (u == v) continue;
    for (Vertex w = u + 1; w < n; ++w)
      if (w != v && h.has_edge(v, u, w)) ++d;
  }
  return d;
}

std::uint64_t deg_pair(const Hypergraph3& h, Vertex u, Vertex v) {
  check_vertex(h, u);
  check_vertex(h, v);
  if (u == v) fail(ErrorCode::InvalidArgument, "co-degree needs two distinct vertices");
  std::uint64_t d = 0;
  for (Vertex w = 0; w < h.order(); ++w)
    if (h.has_edge(u, v, w)) ++d;
  return d;
}

std::vector<std::uint64_t> vertex_degrees(const Hypergraph3& h) {
  std::vector<std::uint64_t> deg(h.order(), 0);
  h.for_each_edge([&](const Triple& t) {
    ++deg[t[0]];
    ++deg[t[1]];
    ++deg[t[2]];
  });
  return deg;
}

MinDegrees min_degrees(const Hypergraph3& h) {
  const std::size_t n = h.order();
  if (n < 3) fail(ErrorCode::InvalidArgument, "minimum degrees need n >= 3");
  std::vector<std::uint64_t> deg(n, 0);
  std::vector<std::uint32_t> codeg(n * n, 0);
  h.for_each_edge([&](const Triple& t) {
    auto [a, b, c] = t;
    ++deg[a];
    ++deg[b];
    ++deg[c];
    ++codeg[a * n + b];
    ++codeg[a * n + c];
    ++codeg[b * n + c];
  });
  MinDegrees m{*std::min_element(deg.begin(), deg.end()), std::numeric_limits<std::uint64_t>::max()};
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) m.pair = std::min<std::uint64_t>(m.pair, codeg[u * n + v]);
  return m;
}

PairGraph link_graph(const Hypergraph3& h, Vertex v) {
  check_vertex(h, v);
  PairGraph g(h.order());
  h.for_each_edge([&](const Triple& t) {
    if (t[0] == v) g.add_edge(t[1], t[2]);
    else if (t[1] == v) g.add_edge(t[0], t[2]);
    else if (t[2] == v) g.add_edge(t[0], t[1]);
  });
  return g;
}

PairGraph large_pair_graph(const Hypergraph3& h, const Rational& alpha) {
  if (alpha <= 0 || alpha >= 1) fail(ErrorCode::InvalidArgument, "alpha must lie in (0,1), got " + to_string(alpha));
  const std::size_t n = h.order();
  std::vector<std::uint32_t> codeg(n * n, 0);
  h.for_each_edge([&](const Triple& t) {
    auto [a, b, c] = t;
    ++codeg[a * n + b];
    ++codeg[a * n + c];
    ++codeg[b * n + c];
  });
  // deg >= (num/den)(n-2)  <=>  deg * den >= num * (n-2)
  const BigInt num = boost::multiprecision::numerator(alpha);
  const BigInt den = boost::multiprecision::denominator(alpha);
  const BigInt rhs = num * BigInt(n >= 2 ? n - 2 : 0);
  // Smallest integer co-degree meeting the bound.
  BigInt min_deg = rhs / den + (rhs % den != 0 ? 1 : 0);
  const std::uint64_t threshold = min_deg.convert_to<std::uint64_t>();
  PairGraph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (codeg[u * n + v] >= threshold) g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  return g;
}

Hypergraph3 filter_by_large_pairs(const Hypergraph3& h, const PairGraph& large) {
  Hypergraph3 out(h.order());
  h.for_each_edge([&](const Triple& t) {
    auto [a, b, c] = t;
    if (large.has_edge(a, b) || large.has_edge(a, c) || large.has_edge(b, c)) out.add_edge(a, b, c);
  });
  return out;
}

Hypergraph3 h_prime(const Hypergraph3& h) { return filter_by_large_pairs(h, large_pair_graph(h, Rational(1, 3))); }

Hypergraph3 remove_vertices(const Hypergraph3& h, const VertexSet& s) {
  if (s.universe() != h.order()) fail(ErrorCode::InvalidArgument, "vertex set universe does not match n");
  Hypergraph3 out(h.order());
  h.for_each_edge([&](const Triple& t) {
    if (!s.contains(t[0]) && !s.contains(t[1]) && !s.contains(t[2])) out.add_edge(t[0], t[1], t[2]);
  });
  return out;
}

Compacted compact(const Hypergraph3& h, const VertexSet& keep) {
  if (keep.universe() != h.order()) fail(ErrorCode::InvalidArgument, "vertex set universe does not match n");
  Compacted c{Hypergraph3(keep.count()), keep.to_vector()};
  std::vector<Vertex> relabel(h.order(), 0);
  for (Vertex i = 0; i < c.original.size(); ++i) relabel[c.original[i]] = i;
  h.for_each_edge([&](const Triple& t) {
    if (keep.contains(t[0]) && keep.contains(t[1]) && keep.contains(t[2]))
      c.graph.add_edge(relabel[t[0]], relabel[t[1]], relabel[t[2]]);
  });
  return c;
}

std::uint64_t crossing_edges(const Hypergraph3& h, const VertexSet& a1, const VertexSet& a2, const VertexSet& a3) {
  std::uint64_t e = 0;
  a1.for_each([&](Vertex x) {
    a2.for_each([&](Vertex y) {
      a3.for_each([&](Vertex z) {
        if (h.has_edge(x, y, z)) ++e;
      });
    });
  });
  return e;
}

Rational partite_density(const Hypergraph3& h, const VertexSet& a1, const VertexSet& a2, const VertexSet& a3) {
  if (a1.universe() != h.order() || a2.universe() != h.order() || a3.universe() != h.order())
    fail(ErrorCode::InvalidArgument, "part universe does not match n");
  if (a1.empty() || a2.empty() || a3.empty()) fail(ErrorCode::InvalidArgument, "partite density needs non-empty parts");
  if (a1.intersects(a2) || a1.intersects(a3) || a2.intersects(a3))
    fail(ErrorCode::InvalidArgument, "partite density needs pairwise disjoint parts");
  return Rational(crossing_edges(h, a1, a2, a3)) / Rational(a1.count() * a2.count() * a3.count());
}

Rational min_deg_ratio(const Hypergraph3& h) {
  auto m = min_degrees(h);
  return Rational(m.vertex) / Rational(choose2(h.order() - 1));
}

}  // namespace tightham
