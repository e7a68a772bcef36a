#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tightham/rational.hpp"
#include "tightham/vertex_set.hpp"

namespace tightham {

// Build-time cap on vertex count; bitmap size is C(n,3) bits.
#ifndef TIGHTHAM_MAX_VERTICES
#define TIGHTHAM_MAX_VERTICES 4096
#endif
inline constexpr std::size_t kMaxVertices = TIGHTHAM_MAX_VERTICES;

using Triple = std::array<Vertex, 3>;

constexpr std::uint64_t choose2(std::uint64_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }
constexpr std::uint64_t choose3(std::uint64_t n) noexcept { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

// Colex rank of a < b < c: C(c,3) + C(b,2) + a. Frozen: the binary file
// format stores bits in this order.
constexpr std::uint64_t triple_rank(Vertex a, Vertex b, Vertex c) noexcept {
  return choose3(c) + choose2(b) + a;
}

Triple triple_unrank(std::uint64_t rank);

constexpr Triple sorted_triple(Vertex a, Vertex b, Vertex c) noexcept {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return {a, b, c};
}

class Hypergraph3 {
 public:
  Hypergraph3() = default;
  explicit Hypergraph3(std::size_t n);

  static Hypergraph3 complete(std::size_t n);

  std::size_t order() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return edges_; }

  // False for repeated or out-of-range vertices.
  bool has_edge(Vertex a, Vertex b, Vertex c) const noexcept {
    if (a == b || b == c || a == c || a >= n_ || b >= n_ || c >= n_) return false;
    auto t = sorted_triple(a, b, c);
    std::uint64_t r = triple_rank(t[0], t[1], t[2]);
    return (bits_[r >> 6] >> (r & 63)) & 1u;
  }
  bool has_edge(const Triple& t) const noexcept { return has_edge(t[0], t[1], t[2]); }

  void add_edge(Vertex a, Vertex b, Vertex c) { set_edge(a, b, c, true); }
  void remove_edge(Vertex a, Vertex b, Vertex c) { set_edge(a, b, c, false); }
  void set_edge(Vertex a, Vertex b, Vertex c, bool present);

  // Visits every edge as a sorted triple, in colex order.
  template <class F>
  void for_each_edge(F&& f) const {
    std::uint64_t r = 0;
    for (Vertex c = 2; c < n_; ++c)
      for (Vertex b = 1; b < c; ++b)
        for (Vertex a = 0; a < b; ++a, ++r)
          if ((bits_[r >> 6] >> (r & 63)) & 1u) f(Triple{a, b, c});
  }

  std::vector<Triple> edge_list() const;

  // Raw colex bitmap, bit r of word r/64.
  std::span<const std::uint64_t> words() const noexcept { return bits_; }
  static Hypergraph3 from_words(std::size_t n, std::vector<std::uint64_t> words);

  friend bool operator==(const Hypergraph3& a, const Hypergraph3& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t n_ = 0;
  std::uint64_t edges_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Simple graph on the same vertex labels; adjacency as per-vertex bitmaps.
class PairGraph {
 public:
  PairGraph() = default;
  explicit PairGraph(std::size_t n) : n_(n), adj_(n, VertexSet(n)) {}

  std::size_t order() const noexcept { return n_; }
  bool has_edge(Vertex u, Vertex v) const noexcept { return u < n_ && adj_[u].contains(v); }
  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);
  std::size_t degree(Vertex v) const { return adj_.at(v).count(); }
  const VertexSet& neighbors(Vertex v) const { return adj_.at(v); }
  std::uint64_t edge_count() const;
  std::vector<std::pair<Vertex, Vertex>> edge_list() const;
  bool is_subgraph_of(const PairGraph& o) const;
  friend bool operator==(const PairGraph&, const PairGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<VertexSet> adj_;
};

// Co-neighbourhood table N_H(u,v) for all pairs. Memory n^2 * n bits, so
// intended for the desk-scale algorithms (n up to a few hundred).
class PairNeighborhoods {
 public:
  explicit PairNeighborhoods(const Hypergraph3& h);

  std::size_t order() const noexcept { return n_; }
  const VertexSet& of(Vertex u, Vertex v) const { return table_[static_cast<std::size_t>(u) * n_ + v]; }
  std::size_t codegree(Vertex u, Vertex v) const { return of(u, v).count(); }

 private:
  std::size_t n_;
  std::vector<VertexSet> table_;
};

std::uint64_t deg_vertex(const Hypergraph3& h, Vertex v);
std::uint64_t deg_pair(const Hypergraph3& h, Vertex u, Vertex v);
std::vector<std::uint64_t> vertex_degrees(const Hypergraph3& h);

struct MinDegrees {
  std::uint64_t vertex;  // delta_1
  std::uint64_t pair;    // delta_2
};
MinDegrees min_degrees(const Hypergraph3& h);

PairGraph link_graph(const Hypergraph3& h, Vertex v);

// Pairs with co-degree >= alpha (n-2), compared exactly.
PairGraph large_pair_graph(const Hypergraph3& h, const Rational& alpha);

// Keeps the edges that contain at least one pair of G_{1/3} of h.
Hypergraph3 h_prime(const Hypergraph3& h);
// Same filter against a caller-supplied large-pair graph.
Hypergraph3 filter_by_large_pairs(const Hypergraph3& h, const PairGraph& large);

// H - S with stable labels: vertices of S stay but become isolated.
Hypergraph3 remove_vertices(const Hypergraph3& h, const VertexSet& s);
// Induced subhypergraph on `keep` relabelled to 0..|keep|-1 in increasing order.
struct Compacted {
  Hypergraph3 graph;
  std::vector<Vertex> original;  // new label -> old label
};
Compacted compact(const Hypergraph3& h, const VertexSet& keep);

std::uint64_t crossing_edges(const Hypergraph3& h, const VertexSet& a1, const VertexSet& a2, const VertexSet& a3);
Rational partite_density(const Hypergraph3& h, const VertexSet& a1, const VertexSet& a2, const VertexSet& a3);

// delta_1(H) / C(n-1, 2).
Rational min_deg_ratio(const Hypergraph3& h);

}  // namespace tightham
