#include "thintree/lch.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "thintree/spectral.hpp"

namespace thintree {

int Hierarchy::root() const {
  int r = -1;
  for (int t = 0; t < nodes(); ++t)
    if (parent[t] < 0) {
      if (r >= 0) fail("InconsistentLeafMap", "multiple roots");
      r = t;
    }
  if (r < 0) fail("InconsistentLeafMap", "no root");
  return r;
}

std::vector<std::vector<int>> Hierarchy::children() const {
  std::vector<std::vector<int>> ch(nodes());
  for (int t = 0; t < nodes(); ++t)
    if (parent[t] >= 0) {
      if (parent[t] >= nodes()) fail("InconsistentLeafMap", "parent out of range");
      ch[parent[t]].push_back(t);
    }
  return ch;
}

void Hierarchy::checkStructure(int graphN) const {
  if (parent.size() != leafVertex.size()) fail("InconsistentLeafMap", "field size mismatch");
  int r = root();
  auto ch = children();
  // acyclic and connected: walk up from each node
  for (int t = 0; t < nodes(); ++t) {
    int cur = t, steps = 0;
    while (cur >= 0) {
      cur = parent[cur];
      if (++steps > nodes()) fail("InconsistentLeafMap", "parent cycle");
    }
  }
  std::vector<char> seen(graphN, 0);
  int leaves = 0;
  for (int t = 0; t < nodes(); ++t) {
    if (isLeaf(t)) {
      ++leaves;
      int v = leafVertex[t];
      if (v < 0 || v >= graphN) fail("InconsistentLeafMap", "leaf vertex out of range");
      if (seen[v]) fail("InconsistentLeafMap", "duplicate leaf vertex");
      seen[v] = 1;
      if (!ch[t].empty()) fail("InconsistentLeafMap", "leaf with children");
    } else if (nodes() > 1 || t != r) {
      if (ch[t].size() < 2)
        fail("InconsistentLeafMap", "internal node " + std::to_string(t) + " has < 2 children");
    }
  }
  if (leaves != graphN) fail("InconsistentLeafMap", "leaf count differs from vertex count");
}

Hierarchy makeStarHierarchy(const MultiGraph& g) {
  Hierarchy h;
  if (g.n == 1) {
    h.parent = {-1};
    h.leafVertex = {0};
    return h;
  }
  h.parent.assign(g.n + 1, g.n);
  h.parent[g.n] = -1;
  h.leafVertex.assign(g.n + 1, -1);
  for (int v = 0; v < g.n; ++v) h.leafVertex[v] = v;
  for (int v = 0; v < g.n; ++v) h.marked.push_back(v);
  return h;
}

namespace {

std::vector<VertexSet> nodeVertexSets(const MultiGraph& g, const Hierarchy& h) {
  auto ch = h.children();
  std::vector<VertexSet> vs(h.nodes(), VertexSet(g.n));
  // process children before parents: repeated passes over a topological order
  std::vector<int> order;
  std::vector<int> stack{h.root()};
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    order.push_back(t);
    for (int c : ch[t]) stack.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int t = *it;
    if (h.isLeaf(t)) {
      vs[t].set(h.leafVertex[t]);
    } else {
      for (int c : ch[t])
        for (int v : vs[c].indices()) vs[t].set(v);
    }
  }
  return vs;
}

}  // namespace

NodeViews hierarchyViews(const MultiGraph& g, const Hierarchy& h, int t) {
  if (t < 0 || t >= h.nodes()) fail("UnknownNode", "node id out of range");
  h.checkStructure(g.n);
  auto vs = nodeVertexSets(g, h);
  NodeViews out;
  out.vertexSet = vs[t];
  int p = h.parent[t];
  out.leavingDefined = p >= 0;
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    bool iu = vs[t].test(u), iv = vs[t].test(v);
    if (iu == iv) continue;
    out.leavingG.push_back(e);
    if (p >= 0) {
      int other = iu ? v : u;
      if (vs[p].test(other)) out.leaving.push_back(e);
    }
  }
  // internal graph: children contracted
  auto ch = h.children();
  if (h.isLeaf(t)) {
    out.internal = MultiGraph(1, {});
    out.internalVertexChild = {t};
    return out;
  }
  std::vector<int> childOf(g.n, -1);
  for (size_t i = 0; i < ch[t].size(); ++i)
    for (int v : vs[ch[t][i]].indices()) childOf[v] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    if (!vs[t].test(u) || !vs[t].test(v)) continue;
    int a = childOf[u], b = childOf[v];
    if (a != b) {
      edges.emplace_back(a, b);
      out.internalEdgeIds.push_back(e);
    }
  }
  out.internal = MultiGraph(static_cast<int>(ch[t].size()), std::move(edges));
  out.internalVertexChild = ch[t];
  return out;
}

LchReport validateLCH(const MultiGraph& g, const Hierarchy& h, int k, double lambda,
                      const std::vector<int>& tset) {
  LchReport rep;
  rep.k = k;
  rep.lambda = lambda;
  h.checkStructure(g.n);
  auto vs = nodeVertexSets(g, h);
  auto ch = h.children();
  int root = h.root();
  std::vector<long long> oSize(h.nodes(), 0), pSize(h.nodes(), 0);
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    for (int t = 0; t < h.nodes(); ++t) {
      bool iu = vs[t].test(u), iv = vs[t].test(v);
      if (iu == iv) continue;
      pSize[t]++;
      int p = h.parent[t];
      if (p >= 0 && vs[p].test(iu ? v : u)) oSize[t]++;
    }
  }
  for (int t = 0; t < h.nodes(); ++t) {
    // condition 1: G(t) is k-edge-connected
    if (vs[t].count() >= 2) {
      auto ind = inducedSubgraph(g, vs[t]);
      auto [val, wit] = minEdgeConnectivity(ind.graph);
      if (val < k)
        rep.violations.push_back({t, "induced-connectivity", static_cast<double>(val)});
    }
    // condition 2: |O(t)| >= k for non-root nodes
    if (t != root && oSize[t] < k)
      rep.violations.push_back({t, "leaving-count", static_cast<double>(oSize[t])});
  }
  // condition 3: |O(t)| >= lambda |P(t)| on the designated node set
  for (int t : tset) {
    if (t < 0 || t >= h.nodes()) fail("UnknownNode", "Tset node out of range");
    if (t == root) continue;
    double measured = pSize[t] > 0 ? static_cast<double>(oSize[t]) / pSize[t] : 1.0;
    if (static_cast<double>(oSize[t]) + 1e-12 >= lambda * static_cast<double>(pSize[t]))
      rep.validNodes.push_back(t);
    else
      rep.violations.push_back({t, "density", measured});
  }
  return rep;
}

Hierarchy planarLCH(const MultiGraph& g) {
  Hierarchy h;
  for (int v = 0; v < g.n; ++v) {
    h.parent.push_back(-1);
    h.leafVertex.push_back(v);
  }
  if (g.n == 1) return h;
  // active set W: nodes without a parent; vertexNode[v] = active node owning v
  std::vector<int> vertexNode(g.n);
  for (int v = 0; v < g.n; ++v) vertexNode[v] = v;
  std::vector<int> active;
  for (int v = 0; v < g.n; ++v) active.push_back(v);
  while (active.size() > 1) {
    // parallel-edge counts of the contracted graph on active nodes
    std::map<std::pair<int, int>, long long> mult;
    for (auto [u, v] : g.edges) {
      int a = vertexNode[u], b = vertexNode[v];
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      mult[{a, b}]++;
    }
    std::map<int, std::vector<std::pair<int, long long>>> nbrs;
    for (auto& [key, c] : mult) {
      nbrs[key.first].push_back({key.second, c});
      nbrs[key.second].push_back({key.first, c});
    }
    int t1 = -1;
    for (int t : active) {
      if (nbrs[t].size() <= 5 && !nbrs[t].empty()) {
        t1 = t;
        break;  // active is kept sorted: lowest index wins
      }
    }
    if (t1 < 0) fail("NoLowDegreeVertex", "no contracted vertex with <= 5 neighbors");
    long long bestC = -1;
    int t2 = -1;
    for (auto& [nb, c] : nbrs[t1]) {
      if (c > bestC || (c == bestC && nb < t2)) {
        bestC = c;
        t2 = nb;
      }
    }
    int tstar = h.nodes();
    h.parent.push_back(-1);
    h.leafVertex.push_back(-1);
    h.parent[t1] = tstar;
    h.parent[t2] = tstar;
    h.marked.push_back(t1);
    for (int v = 0; v < g.n; ++v)
      if (vertexNode[v] == t1 || vertexNode[v] == t2) vertexNode[v] = tstar;
    std::vector<int> next;
    for (int t : active)
      if (t != t1 && t != t2) next.push_back(t);
    next.push_back(tstar);
    std::sort(next.begin(), next.end());
    active = std::move(next);
  }
  return h;
}

VertexSet expanderExtract(const MultiGraph& g, int k, double logBase) {
  if (logBase <= 1.0) fail("BadK", "log base must exceed 1");
  double logN = std::log(static_cast<double>(g.n)) / std::log(logBase);
  if (static_cast<double>(k) < 7.0 * logN)
    fail("PreconditionFailed", "k < 7 log(n) in the chosen base");
  auto degG = g.degrees();
  VertexSet u(g.n);
  for (int v = 0; v < g.n; ++v) u.set(v);
  if (g.n == 1) return u;

  auto phiG = [&](const VertexSet& s) -> double {
    long long boundary = 0, d = 0;
    for (auto [a, b] : g.edges) boundary += s.test(a) != s.test(b);
    for (int v : s.indices()) d += degG[v];
    if (d == 0) return 0.0;
    return static_cast<double>(boundary) / static_cast<double>(d);
  };

  for (;;) {
    auto ind = inducedSubgraph(g, u);
    const MultiGraph& H = ind.graph;
    auto idx = u.indices();
    auto degH = H.degrees();
    // strip low-density vertices (exact rational comparison)
    int strip = -1;
    for (size_t i = 0; i < idx.size(); ++i) {
      if (20LL * degH[i] <= 7LL * degG[idx[i]]) {
        strip = idx[i];
        break;
      }
    }
    if (strip >= 0) {
      if (u.count() <= 1) fail("PreconditionFailed", "stripping emptied the candidate set");
      u.reset(strip);
      continue;
    }
    if (H.n == 1) return u;

    // spectral partition of H (components split directly when disconnected)
    VertexSet sideH(H.n);
    double phiHS, phiHT;
    if (!H.connected()) {
      auto comp = H.componentOf();
      for (int v = 0; v < H.n; ++v)
        if (comp[v] == comp[0]) sideH.set(v);
      phiHS = phiHT = 0.0;
    } else {
      Cut c = spectralPartition(H);
      sideH = c.side;
      Expansion ex = expansion(H, sideH);
      phiHS = ex.phiS;
      phiHT = ex.phiComplement;
    }
    VertexSet S(g.n), T(g.n);
    for (int v = 0; v < H.n; ++v) (sideH.test(v) ? S : T).set(idx[v]);

    double pU = phiG(u), pS = phiG(S), pT = phiG(T);
    if (pS <= pU || pT <= pU) {
      u = pS <= pT ? S : T;
      if (u.count() == 0) fail("PreconditionFailed", "descent emptied the candidate set");
      continue;
    }
    if (std::max(phiHS, phiHT) < 1.0 / static_cast<double>(k)) {
      u = S.count() <= T.count() ? S : T;
      continue;
    }
    // H is an expander by Cheeger now; check connectivity
    auto [hc, hwit] = minEdgeConnectivity(H);
    if (20LL * hc >= k) return u;
    // take the min-cut side with the larger phi_H (same boundary, smaller degree)
    long long dS = 0, dT = 0;
    for (int v = 0; v < H.n; ++v) (hwit.side.test(v) ? dS : dT) += degH[v];
    VertexSet sH = dS <= dT ? hwit.side : hwit.side.complement();
    VertexSet sG(g.n);
    for (int v = 0; v < H.n; ++v)
      if (sH.test(v)) sG.set(idx[v]);
    auto indS = inducedSubgraph(g, sG);
    Decomposition dec = naturalDecomposition(indS.graph, (k + 19) / 20);
    // pick the part with the smallest boundary in H
    auto idxS = sG.indices();
    long long best = -1;
    VertexSet bestPart(g.n);
    for (const auto& part : dec.parts) {
      VertexSet partG(g.n);
      for (int v : part.indices()) partG.set(idxS[v]);
      long long boundary = 0;
      for (auto [a, b] : g.edges) {
        bool ia = partG.test(a), ib = partG.test(b);
        if (ia != ib && u.test(a) && u.test(b)) ++boundary;  // boundary within H
      }
      if (best < 0 || boundary < best) {
        best = boundary;
        bestPart = partG;
      }
    }
    return bestPart;
  }
}

Hierarchy generalLCH(const MultiGraph& g, int k, double logBase) {
  Hierarchy h;
  for (int v = 0; v < g.n; ++v) {
    h.parent.push_back(-1);
    h.leafVertex.push_back(v);
  }
  if (g.n == 1) {
    h.marked.push_back(0);
    return h;
  }
  std::vector<int> vertexNode(g.n);
  std::vector<int> active;
  for (int v = 0; v < g.n; ++v) {
    vertexNode[v] = v;
    active.push_back(v);
  }
  while (active.size() > 1) {
    // contracted graph on active nodes
    std::vector<int> nodeIndex(h.nodes(), -1);
    for (size_t i = 0; i < active.size(); ++i) nodeIndex[active[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> cedges;
    for (auto [a, b] : g.edges) {
      int x = nodeIndex[vertexNode[a]], y = nodeIndex[vertexNode[b]];
      if (x != y) cedges.emplace_back(x, y);
    }
    MultiGraph contracted(static_cast<int>(active.size()), std::move(cedges));
    VertexSet sub = expanderExtract(contracted, k, logBase);
    if (sub.count() < 2) fail("PreconditionFailed", "extraction yielded a single node");
    int tstar = h.nodes();
    h.parent.push_back(-1);
    h.leafVertex.push_back(-1);
    std::vector<int> mergedNodes;
    for (int v : sub.indices()) mergedNodes.push_back(active[v]);
    for (int t : mergedNodes) h.parent[t] = tstar;
    for (int v = 0; v < g.n; ++v)
      for (int t : mergedNodes)
        if (vertexNode[v] == t) vertexNode[v] = tstar;
    std::vector<int> next;
    for (int t : active)
      if (h.parent[t] < 0 && t != tstar) next.push_back(t);
    next.push_back(tstar);
    std::sort(next.begin(), next.end());
    active = std::move(next);
  }
  for (int t = 0; t < h.nodes(); ++t) h.marked.push_back(t);
  return h;
}

}  // namespace thintree
