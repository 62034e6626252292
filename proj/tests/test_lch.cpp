#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "thintree/generators.hpp"
#include "thintree/lch.hpp"
#include "thintree/util.hpp"

using namespace thintree;

namespace {

// Fig.-4 style path hierarchy for dyadic(h, k): node i (0..2^h) is the leaf
// of vertex i; internal node t_i = 2^h + i has children {t_{i-1} or leaf 0/1}
// and leaf i. marked = leaves 1..2^h.
Hierarchy dyadicHierarchy(int h) {
  int n = (1 << h) + 1;
  Hierarchy hi;
  hi.parent.assign(2 * n - 1, -1);
  hi.leafVertex.assign(2 * n - 1, -1);
  for (int v = 0; v < n; ++v) hi.leafVertex[v] = v;
  // internal node for {0..i} is n + i - 1, i = 1..n-1
  hi.parent[0] = n;
  hi.parent[1] = n;
  for (int i = 2; i < n; ++i) {
    hi.parent[i] = n + i - 1;
    hi.parent[n + i - 2] = n + i - 1;
  }
  for (int v = 1; v < n; ++v) hi.marked.push_back(v);
  return hi;
}

MultiGraph dumbbell(int k) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < k; ++i) e.emplace_back(0, 1);
  return MultiGraph(2, std::move(e));
}

Hierarchy randomHierarchy(Rng& rng, int n) {
  Hierarchy h;
  for (int v = 0; v < n; ++v) {
    h.parent.push_back(-1);
    h.leafVertex.push_back(v);
  }
  std::vector<int> open;
  for (int v = 0; v < n; ++v) open.push_back(v);
  while (open.size() > 1) {
    size_t take = 2 + rng.below(std::min<size_t>(open.size() - 1, 2)) ;
    if (open.size() - take == 1) take = open.size();
    take = std::min(take, open.size());
    int p = h.nodes();
    h.parent.push_back(-1);
    h.leafVertex.push_back(-1);
    for (size_t i = 0; i < take; ++i) {
      size_t pick = rng.below(open.size());
      h.parent[open[pick]] = p;
      open.erase(open.begin() + static_cast<long>(pick));
    }
    open.push_back(p);
  }
  return h;
}

}  // namespace

TEST_CASE("hierarchy views on the dyadic path hierarchy") {
  int h = 3, k = 4;
  MultiGraph g = dyadic(h, k);
  Hierarchy hi = dyadicHierarchy(h);
  hi.checkStructure(g.n);

  // leaf i: O(i) = all edges from i to {0..i-1}
  for (int i = 1; i <= (1 << h); ++i) {
    NodeViews nv = hierarchyViews(g, hi, i);
    REQUIRE(nv.leavingDefined);
    std::set<int> expected;
    for (int e = 0; e < g.m(); ++e) {
      auto [u, v] = g.edges[e];
      if (std::max(u, v) == i) expected.insert(e);
    }
    std::set<int> got(nv.leaving.begin(), nv.leaving.end());
    CHECK(got == expected);
    // t_i has exactly two children, so O(leaf i) = O(t_{i-1})
    if (i >= 2) {
      NodeViews sib = hierarchyViews(g, hi, g.n + i - 2);
      std::set<int> sgot(sib.leaving.begin(), sib.leaving.end());
      CHECK(sgot == expected);
    }
  }
  // root: P(root) empty, O undefined
  NodeViews rv = hierarchyViews(g, hi, hi.root());
  CHECK_FALSE(rv.leavingDefined);
  CHECK(rv.leavingG.empty());
  CHECK_THROWS_WITH_AS(hierarchyViews(g, hi, 999), doctest::Contains("UnknownNode"), Error);
}

TEST_CASE("star hierarchy internal graph is the graph itself") {
  MultiGraph g = dyadic(2, 2);
  Hierarchy star = makeStarHierarchy(g);
  NodeViews nv = hierarchyViews(g, star, star.root());
  CHECK(nv.internal.n == g.n);
  CHECK(nv.internal.m() == g.m());
}

TEST_CASE("validateLCH") {
  int h = 3;
  for (int k : {4, 8}) {
    MultiGraph g = dyadic(h, k);
    Hierarchy hi = dyadicHierarchy(h);
    auto rep = validateLCH(g, hi, k, 0.5, hi.marked);
    CHECK(rep.valid());
    CHECK(rep.validNodes.size() == hi.marked.size());
  }
  // star hierarchy on a k-edge-connected graph with empty marked set
  MultiGraph db = dumbbell(5);
  Hierarchy star = makeStarHierarchy(db);
  CHECK(validateLCH(db, star, 5, 0.0, {}).valid());

  // non-leaf single-child node is rejected
  Hierarchy bad;
  bad.parent = {1, 2, -1};
  bad.leafVertex = {0, -1, -1};
  MultiGraph single(1, {});
  CHECK_THROWS_WITH_AS(validateLCH(single, bad, 1, 0.5, {}),
                       doctest::Contains("InconsistentLeafMap"), Error);
}

TEST_CASE("planarLCH") {
  Hierarchy h1 = planarLCH(dumbbell(7));
  CHECK(h1.nodes() == 3);
  CHECK(validateLCH(dumbbell(7), h1, 7 / 5, 0.2, h1.marked).valid());

  // triangle with 6 parallel edges per side: 5 nodes, valid
  std::vector<std::pair<int, int>> te;
  for (int c = 0; c < 6; ++c) {
    te.emplace_back(0, 1);
    te.emplace_back(1, 2);
    te.emplace_back(2, 0);
  }
  MultiGraph tri(3, std::move(te));
  Hierarchy h2 = planarLCH(tri);
  CHECK(h2.nodes() == 5);
  CHECK(validateLCH(tri, h2, 12 / 5, 0.2, h2.marked).valid());

  // ladder(8,4): n-1 merges, binary; validates at k/5 after amplification
  MultiGraph lad = ladder(8, 4, false).graph;
  Hierarchy h3 = planarLCH(lad);
  CHECK(h3.nodes() == 2 * lad.n - 1);
  auto ch = h3.children();
  for (int t = 0; t < h3.nodes(); ++t)
    if (!h3.isLeaf(t)) CHECK(ch[t].size() == 2);
  CHECK(validateLCH(lad, h3, 0, 0.2, h3.marked).valid());

  MultiGraph amp = amplify(lad, 10);
  Hierarchy h4 = planarLCH(amp);
  CHECK(validateLCH(amp, h4, 40 / 5, 0.2, h4.marked).valid());
}

TEST_CASE("expanderExtract") {
  // dumbbell with k >= 7 log2(2) = 7: the whole vertex set comes back
  VertexSet s = expanderExtract(dumbbell(7), 7);
  CHECK(s.count() == 2);

  CHECK_THROWS_WITH_AS(expanderExtract(hypercube(4), 4),
                       doctest::Contains("PreconditionFailed"), Error);

  MultiGraph q4 = amplify(hypercube(4), 14);
  VertexSet s2 = expanderExtract(q4, 56);
  auto ind = inducedSubgraph(q4, s2);
  int k = 56;
  CHECK(minEdgeConnectivity(ind.graph).first >= k / 20);
  // 1/4-dense
  auto degG = q4.degrees();
  auto degH = ind.graph.degrees();
  for (int v : s2.indices()) CHECK(4 * degH[ind.vertexMap[v]] >= degG[v]);
  // expansion >= 1/k^2, verified exhaustively
  if (ind.graph.n >= 2) {
    auto ge = graphExpansion(ind.graph);
    CHECK_FALSE(ge.heuristic);
    CHECK(ge.phi >= 1.0 / (static_cast<double>(k) * k));
  }
}

TEST_CASE("generalLCH") {
  Hierarchy h1 = generalLCH(dumbbell(7), 7);
  CHECK(h1.nodes() == 3);

  MultiGraph q4 = amplify(hypercube(4), 14);
  Hierarchy h2 = generalLCH(q4, 56);
  auto rep = validateLCH(q4, h2, 56 / 20, 0.25, h2.marked);
  CHECK(rep.valid());
  for (int t = 0; t < h2.nodes(); ++t) {
    if (h2.isLeaf(t)) continue;
    NodeViews nv = hierarchyViews(q4, h2, t);
    if (nv.internal.n >= 2 && nv.internal.n <= kExhaustiveCap) {
      auto ge = graphExpansion(nv.internal);
      CHECK(ge.phi >= 1.0 / (56.0 * 56.0));
    }
  }

  MultiGraph c6 = amplify(MultiGraph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}), 14);
  Hierarchy h3 = generalLCH(c6, 28);
  for (int t = 0; t < h3.nodes(); ++t) {
    if (h3.isLeaf(t)) continue;
    NodeViews nv = hierarchyViews(c6, h3, t);
    CHECK(nv.internal.connected());
  }
  // every vertex reaches the root through its V(t) chain
  NodeViews rv = hierarchyViews(c6, h3, h3.root());
  CHECK(rv.vertexSet.count() == c6.n);
}

TEST_CASE("internal connectivity composes (Lemma 3.2)") {
  Rng rng(77);
  int done = 0;
  while (done < 12) {
    int n = 4 + static_cast<int>(rng.below(7));  // n <= 10
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(static_cast<int>(rng.below(v)), v);
    for (int i = 0; i < 3 * n; ++i) {
      int u = static_cast<int>(rng.below(n));
      int v = static_cast<int>(rng.below(n));
      if (u != v) edges.emplace_back(u, v);
    }
    MultiGraph g(n, edges);
    Hierarchy h = randomHierarchy(rng, n);
    h.checkStructure(n);
    // random F
    std::vector<int> f;
    std::vector<char> inF(g.m(), 0);
    for (int e = 0; e < g.m(); ++e)
      if (rng.below(100) < 70) {
        f.push_back(e);
        inF[e] = 1;
      }
    long long c = -1;
    for (int t = 0; t < h.nodes(); ++t) {
      if (h.isLeaf(t)) continue;
      NodeViews nv = hierarchyViews(g, h, t);
      std::vector<std::pair<int, int>> fe;
      for (size_t i = 0; i < nv.internalEdgeIds.size(); ++i)
        if (inF[nv.internalEdgeIds[i]]) fe.push_back(nv.internal.edges[i]);
      MultiGraph good(nv.internal.n, std::move(fe));
      long long mc = minEdgeConnectivity(good).first;
      c = c < 0 ? mc : std::min(c, mc);
    }
    if (c <= 0) continue;
    std::vector<std::pair<int, int>> fe;
    for (int e : f) fe.push_back(g.edges[e]);
    MultiGraph fg(n, std::move(fe));
    CHECK(minEdgeConnectivity(fg).first >= c);
    ++done;
  }
}
