#include "tightham/invariants.hpp"

#include <algorithm>

#include "tightham/counting.hpp"
#include "tightham/random.hpp"
#include "tightham/rational.hpp"

namespace tightham {

namespace {

std::string triple_text(const Triple& t) {
  return "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "}";
}

}  // namespace

std::vector<InvariantCheck> run_invariants(const Hypergraph3& h, std::uint64_t seed) {
  const std::size_t n = h.order();
  std::vector<InvariantCheck> out;
  auto add = [&](std::string name, std::string detail) {
    out.push_back({std::move(name), detail.empty(), std::move(detail)});
  };

  const auto deg = vertex_degrees(h);
  std::uint64_t sum = 0;
  for (auto d : deg) sum += d;
  add("degree-sum", sum == 3 * h.size() ? "" : "sum " + std::to_string(sum) + " != 3|H|");

  const PairNeighborhoods nbh(h);
  std::uint64_t pairs = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs += nbh.codegree(u, v);
  add("codegree-sum", pairs == 3 * h.size() ? "" : "sum " + std::to_string(pairs) + " != 3|H|");

  std::string link_bad;
  for (Vertex u = 0; u < n && link_bad.empty(); ++u) {
    const PairGraph l = link_graph(h, u);
    for (Vertex v = 0; v < n; ++v)
      if (v != u && l.degree(v) != nbh.codegree(u, v)) {
        link_bad = "deg_{H(" + std::to_string(u) + ")}(" + std::to_string(v) + ") differs from the co-degree";
        break;
      }
  }
  add("link-degree", link_bad);

  std::vector<Rational> alphas{ratio(33, 100), Rational(1, 3), ratio(39, 100), ratio(48, 100),
                               ratio(58, 100), ratio(65, 100), ratio(8, 10)};
  std::sort(alphas.begin(), alphas.end());
  std::vector<PairGraph> g;
  for (const auto& a : alphas) g.push_back(large_pair_graph(h, a));
  std::string anti_bad;
  for (std::size_t i = 0; i + 1 < g.size(); ++i)
    if (!g[i + 1].is_subgraph_of(g[i])) {
      anti_bad = "G_" + to_string(alphas[i + 1]) + " is not inside G_" + to_string(alphas[i]);
      break;
    }
  add("large-pair-antitone", anti_bad);

  const PairGraph& g13 = g[1];
  const Hypergraph3 hp = h_prime(h);
  std::string hp_bad;
  h.for_each_edge([&](const Triple& t) {
    if (!hp_bad.empty()) return;
    const bool large = g13.has_edge(t[0], t[1]) || g13.has_edge(t[0], t[2]) || g13.has_edge(t[1], t[2]);
    if (large != hp.has_edge(t)) hp_bad = "edge " + triple_text(t) + " is misfiled by the H' filter";
  });
  if (hp_bad.empty() && hp.size() > h.size()) hp_bad = "H' has more edges than H";
  if (hp_bad.empty() && !(filter_by_large_pairs(hp, g13) == hp)) hp_bad = "filtering H' again changes it";
  add("h-prime", hp_bad);

  Rng rng(derive_seed(seed, streams::kSweep));
  VertexSet s(n), t(n);
  for (Vertex v = 0; v < n; ++v) {
    if (rng.bernoulli(0.2)) s.insert(v);
    if (rng.bernoulli(0.2)) t.insert(v);
  }
  add("remove-vertices",
      remove_vertices(remove_vertices(h, s), t) == remove_vertices(h, s | t) ? "" : "H - S - T != H - (S u T)");

  std::string ns_bad, tx_bad;
  for (Vertex x = 0; x < n; ++x) {
    const PairGraph l = link_graph(h, x);
    if (ns_bad.empty() && n >= 3) {
      const auto tri = count_triangles(l);
      if (Rational(tri) < ns_lower_bound(n, l.edge_count()))
        ns_bad = "link of " + std::to_string(x) + " has " + std::to_string(tri) + " triangles";
    }
    if (tx_bad.empty()) {
      triangles_of_link_in(hp, x).for_each_edge([&](const Triple& e) {
        if (!tx_bad.empty()) return;
        const bool inside = e[0] != x && e[1] != x && e[2] != x;
        if (!inside || !hp.has_edge(x, e[0], e[1]) || !hp.has_edge(x, e[0], e[2]) || !hp.has_edge(x, e[1], e[2]))
          tx_bad = "T^" + std::to_string(x) + " edge " + triple_text(e) + " is not a link triangle";
      });
    }
  }
  add("nordhaus-stewart", ns_bad);
  add("link-triangles", tx_bad);
  return out;
}

}  // namespace tightham
