#pragma once
// Brute-force reference implementations used only by tests. Edge membership
// goes through a plain std::set so nothing here depends on the colex bitmap.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "tightham/hypergraph.hpp"

namespace oracle {

using tightham::Hypergraph3;
using tightham::Vertex;

struct EdgeSet {
  std::size_t n = 0;
  std::set<std::array<Vertex, 3>> edges;

  explicit EdgeSet(const Hypergraph3& h) : n(h.order()) {
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b)
        for (Vertex c = b + 1; c < n; ++c)
          if (h.has_edge(a, b, c)) edges.insert({a, b, c});
  }

  bool has(Vertex a, Vertex b, Vertex c) const {
    std::array<Vertex, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return edges.count(t) > 0;
  }
};

// Tries every cyclic ordering with vertex 0 first.
inline bool has_tight_ham_cycle(const Hypergraph3& h) {
  EdgeSet e(h);
  const std::size_t n = h.order();
  if (n < 3) return false;
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = e.has(p[i], p[(i + 1) % n], p[(i + 2) % n]);
    if (ok) return true;
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return false;
}

inline std::uint64_t max_matching(const Hypergraph3& h) {
  EdgeSet e(h);
  std::vector<std::array<Vertex, 3>> list(e.edges.begin(), e.edges.end());
  std::uint64_t best = 0;
  std::vector<char> used(h.order(), 0);
  auto rec = [&](auto&& self, std::size_t from, std::uint64_t cur) -> void {
    best = std::max(best, cur);
    for (std::size_t i = from; i < list.size(); ++i) {
      auto [a, b, c] = list[i];
      if (used[a] || used[b] || used[c]) continue;
      used[a] = used[b] = used[c] = 1;
      self(self, i + 1, cur + 1);
      used[a] = used[b] = used[c] = 0;
    }
  };
  rec(rec, 0, 0);
  return best;
}

inline Hypergraph3 random_graph(std::size_t n, double p, std::uint64_t seed) {
  // Independent generator (LCG) so tests do not lean on the library RNG.
  Hypergraph3 h(n);
  std::uint64_t s = seed * 6364136223846793005ULL + 1442695040888963407ULL;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        if (static_cast<double>(s >> 11) * 0x1.0p-53 < p) h.add_edge(a, b, c);
      }
  return h;
}

// Recounts the reservoir properties from scratch with 50-digit decimals and
// the literal N^{-1/3} (no cube trick). `gamma` is a decimal string. Returns
// an empty string when R passes, else the first failing property.
inline std::string reservoir_failure(const Hypergraph3& h, const std::vector<bool>& on_a, const char* gamma_text,
                                     const std::vector<Vertex>& r) {
  using Dec = boost::multiprecision::cpp_dec_float_50;
  EdgeSet e(h);
  const std::size_t n = h.order();
  std::vector<bool> in_r(n, false);
  for (Vertex v : r) {
    if (on_a[v] || in_r[v]) return "reservoir vertex on A or repeated";
    in_r[v] = true;
  }
  std::size_t big_n = 0;
  for (std::size_t v = 0; v < n; ++v) big_n += on_a[v] ? 0 : 1;
  const Dec gamma(gamma_text);
  const Dec p = gamma * gamma / 3;
  const Dec shrink = 1 / boost::multiprecision::cbrt(Dec(big_n));
  const Dec size(r.size());
  if (boost::multiprecision::abs(size - p * big_n) > p * boost::multiprecision::pow(Dec(big_n), Dec(2) / 3))
    return "size concentration";
  const Dec g2n = gamma * gamma * n;
  if (size < g2n / 4 || size > g2n / 2) return "size window";
  auto codeg = [&](Vertex u, Vertex v) {
    std::size_t c = 0;
    for (Vertex w = 0; w < n; ++w)
      if (w != u && w != v && e.has(u, v, w)) ++c;
    return c;
  };
  std::vector<std::vector<bool>> large(n, std::vector<bool>(n, false));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) large[u][v] = large[v][u] = 3 * codeg(u, v) >= n - 2;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      if (!large[u][v]) continue;
      std::size_t k = 0;
      for (Vertex w : r) k += (w != u && w != v && e.has(u, v, w)) ? 1 : 0;
      if (Dec(k) < (Dec(1) / 3 - gamma - 2 * shrink) * size) return "pair neighbourhood";
    }
  for (Vertex v = 0; v < n; ++v) {
    std::size_t k = 0;
    for (Vertex w : r) k += (w != v && large[v][w]) ? 1 : 0;
    if (Dec(k) < (Dec("0.7") - gamma - 2 * shrink) * size) return "large-pair degree";
  }
  const Dec pairs = size * (size - 1) / 2;
  for (Vertex v = 0; v < n; ++v) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = i + 1; j < r.size(); ++j) k += e.has(v, r[i], r[j]) ? 1 : 0;
    if (Dec(k) < (Dec("0.8") - 3 * gamma - 3 * shrink) * pairs) return "link density";
  }
  return {};
}

}  // namespace oracle
