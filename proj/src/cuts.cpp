#include "thintree/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <queue>

#include "thintree/kernels.hpp"

namespace thintree {

namespace {

// Dinic on a capacity graph built from parallel-edge counts.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : n_(n), head_(n, -1) {}

  void addEdge(int u, int v, long long cap) {
    arcs_.push_back({v, head_[u], cap});
    head_[u] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({u, head_[v], cap});  // undirected: symmetric capacity
    head_[v] = static_cast<int>(arcs_.size()) - 1;
  }

  long long run(int s, int t) {
    for (auto& a : arcs_) a.cap = a.orig;
    long long flow = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      long long f;
      while ((f = dfs(s, t, INT64_MAX)) > 0) flow += f;
    }
    return flow;
  }

  // after run(): source side of the min cut (residual-reachable set)
  VertexSet sourceSide(int s) const {
    VertexSet side(n_);
    std::vector<char> vis(n_, 0);
    std::vector<int> stack{s};
    vis[s] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      side.set(u);
      for (int e = head_[u]; e >= 0; e = arcs_[e].next) {
        if (arcs_[e].cap > 0 && !vis[arcs_[e].to]) {
          vis[arcs_[e].to] = 1;
          stack.push_back(arcs_[e].to);
        }
      }
    }
    return side;
  }

  void freeze() {
    for (auto& a : arcs_) a.orig = a.cap;
  }

 private:
  struct Arc {
    int to, next;
    long long cap;
    long long orig = 0;
  };

  bool bfs(int s, int t) {
    level_.assign(n_, -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e = head_[u]; e >= 0; e = arcs_[e].next) {
        if (arcs_[e].cap > 0 && level_[arcs_[e].to] < 0) {
          level_[arcs_[e].to] = level_[u] + 1;
          q.push(arcs_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  long long dfs(int u, int t, long long lim) {
    if (u == t) return lim;
    for (int& e = iter_[u]; e >= 0; e = arcs_[e].next) {
      Arc& a = arcs_[e];
      if (a.cap > 0 && level_[a.to] == level_[u] + 1) {
        long long f = dfs(a.to, t, std::min(lim, a.cap));
        if (f > 0) {
          a.cap -= f;
          arcs_[e ^ 1].cap += f;
          return f;
        }
      }
    }
    return 0;
  }

  int n_;
  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

MaxFlow buildFlow(const MultiGraph& g) {
  // collapse parallel edges into capacities
  std::vector<std::pair<long long, long long>> pairs;
  pairs.reserve(g.edges.size());
  for (auto [u, v] : g.edges) {
    int a = std::min(u, v), b = std::max(u, v);
    pairs.emplace_back(static_cast<long long>(a) * g.n + b, 1);
  }
  std::sort(pairs.begin(), pairs.end());
  MaxFlow mf(g.n);
  size_t i = 0;
  while (i < pairs.size()) {
    size_t j = i;
    long long cnt = 0;
    while (j < pairs.size() && pairs[j].first == pairs[i].first) {
      cnt += pairs[j].second;
      ++j;
    }
    int a = static_cast<int>(pairs[i].first / g.n);
    int b = static_cast<int>(pairs[i].first % g.n);
    mf.addEdge(a, b, cnt);
    i = j;
  }
  mf.freeze();
  return mf;
}

}  // namespace

Cut cutValue(const MultiGraph& g, const VertexSet& side) {
  if (side.empty() || side.full()) fail("EmptySide", "cut side must be proper and nonempty");
  long long val = 0;
  for (auto [u, v] : g.edges) val += side.test(u) != side.test(v);
  return Cut{canonicalSide(side), val};
}

std::pair<long long, Cut> minEdgeConnectivity(const MultiGraph& g) {
  if (g.n == 1) return {0, Cut{VertexSet(1), 0}};
  if (!g.connected()) {
    auto comp = g.componentOf();
    VertexSet side(g.n);
    for (int v = 0; v < g.n; ++v)
      if (comp[v] == comp[0]) side.set(v);
    return {0, Cut{canonicalSide(side.complement()), 0}};
  }
  MaxFlow mf = buildFlow(g);
  long long best = -1;
  Cut bestCut;
  for (int t = 1; t < g.n; ++t) {
    long long f = mf.run(0, t);
    if (best >= 0 && f > best) continue;
    VertexSet side = canonicalSide(mf.sourceSide(0));
    if (best < 0 || f < best || (f == best && side.setLexLess(bestCut.side))) {
      best = f;
      bestCut = Cut{side, f};
    }
  }
  return {best, bestCut};
}

long long localEdgeConnectivity(const MultiGraph& g, int a, int b) {
  if (a == b) fail("BadPair", "endpoints must differ");
  auto comp = g.componentOf();
  if (comp[a] != comp[b]) fail("Disconnected", "pair lies in different components");
  MaxFlow mf = buildFlow(g);
  return mf.run(a, b);
}

ContractResult contract(const MultiGraph& g, const VertexSet& s) {
  if (s.empty()) fail("EmptySide", "contraction set must be nonempty");
  std::vector<int> map(g.n, -1);
  int next = 0;
  int merged = -1;
  for (int v = 0; v < g.n; ++v) {
    if (s.test(v)) {
      if (merged < 0) merged = next++;
      map[v] = merged;
    } else {
      map[v] = next++;
    }
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edges.size());
  for (auto [u, v] : g.edges) {
    int a = map[u], b = map[v];
    if (a != b) edges.emplace_back(a, b);
  }
  return {MultiGraph(next, std::move(edges)), std::move(map)};
}

InducedResult inducedSubgraph(const MultiGraph& g, const VertexSet& s) {
  if (s.empty()) fail("EmptySide", "induced set must be nonempty");
  std::vector<int> map(g.n, -1);
  int next = 0;
  for (int v = 0; v < g.n; ++v)
    if (s.test(v)) map[v] = next++;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> back;
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    if (map[u] >= 0 && map[v] >= 0) {
      edges.emplace_back(map[u], map[v]);
      back.push_back(e);
    }
  }
  return {MultiGraph(next, std::move(edges)), std::move(map), std::move(back)};
}

Expansion expansion(const MultiGraph& g, const VertexSet& s) {
  if (s.empty() || s.full()) fail("EmptySide", "expansion needs a proper nonempty side");
  auto deg = g.degrees();
  long long dS = 0, dC = 0;
  for (int v = 0; v < g.n; ++v) (s.test(v) ? dS : dC) += deg[v];
  if (dS == 0 || dC == 0) fail("DegenerateDegree", "side with zero total degree");
  long long boundary = 0;
  for (auto [u, v] : g.edges) boundary += s.test(u) != s.test(v);
  Expansion ex;
  ex.phiS = static_cast<double>(boundary) / static_cast<double>(dS);
  ex.phiComplement = static_cast<double>(boundary) / static_cast<double>(dC);
  ex.phiPair = std::max(ex.phiS, ex.phiComplement);
  return ex;
}

void scanSubsets(int n, const double* A, const double* B, bool cutsOnly,
                 const std::function<void(uint32_t, double, double)>& visit) {
  if (n > 32) fail("TooLarge", "subset scan limited to 32 vertices");
  std::vector<double> wA(A ? n : 0, 0.0), wB(B ? n : 0, 0.0);
  double qA = 0.0, qB = 0.0;
  uint32_t cur = 0;
  int bits = cutsOnly ? n - 1 : n;
  uint64_t total = 1ULL << bits;
  uint32_t fullMask = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
  auto flip = [&](int v) {
    bool adding = !((cur >> v) & 1);
    if (A) {
      const double* col = A + static_cast<size_t>(v) * n;
      if (adding) {
        qA += 2.0 * wA[v] + col[v];
        kern::add_inplace(wA.data(), col, n);
      } else {
        kern::sub_inplace(wA.data(), col, n);
        qA -= 2.0 * wA[v] + col[v];
      }
    }
    if (B) {
      const double* col = B + static_cast<size_t>(v) * n;
      if (adding) {
        qB += 2.0 * wB[v] + col[v];
        kern::add_inplace(wB.data(), col, n);
      } else {
        kern::sub_inplace(wB.data(), col, n);
        qB -= 2.0 * wB[v] + col[v];
      }
    }
    cur ^= (1u << v);
  };
  for (uint64_t i = 1; i < total; ++i) {
    // Gray code: bit flipped between step i-1 and i
    int v = __builtin_ctzll(i);
    if (cutsOnly) ++v;  // scan subsets of V - {0}
    flip(v);
    if (!cutsOnly && cur == fullMask) continue;
    visit(cur, qA, qB);
  }
}

GraphExpansion graphExpansion(const MultiGraph& g) {
  if (g.n < 2) fail("EmptySide", "expansion needs at least two vertices");
  auto deg = g.degrees();
  long long dTotal = 0;
  for (int d : deg) dTotal += d;

  GraphExpansion out;
  if (g.n <= kExhaustiveCap) {
    // integer-exact ratio comparison over all cuts
    std::vector<double> L(static_cast<size_t>(g.n) * g.n, 0.0);
    for (auto [u, v] : g.edges) {
      L[static_cast<size_t>(u) * g.n + u] += 1;
      L[static_cast<size_t>(v) * g.n + v] += 1;
      L[static_cast<size_t>(u) * g.n + v] -= 1;
      L[static_cast<size_t>(v) * g.n + u] -= 1;
    }
    long long bestB = -1, bestD = 1;
    uint32_t bestMask = 0;
    std::vector<long long> degv(deg.begin(), deg.end());
    // track d(S) incrementally alongside the quadratic form
    long long dS = 0;
    uint32_t prev = 0;
    scanSubsets(g.n, L.data(), nullptr, true, [&](uint32_t mask, double q, double) {
      uint32_t diff = mask ^ prev;
      while (diff) {
        int v = __builtin_ctz(diff);
        diff &= diff - 1;
        dS += (mask >> v) & 1 ? degv[v] : -degv[v];
      }
      prev = mask;
      long long boundary = llround(q);
      long long dmin = std::min(dS, dTotal - dS);
      if (dmin <= 0) return;
      // compare boundary/dmin < bestB/bestD exactly
      bool better = bestB < 0 || boundary * bestD < bestB * dmin;
      if (!better && bestB >= 0 && boundary * bestD == bestB * dmin) {
        VertexSet cand = canonicalSide(VertexSet::fromMask(g.n, mask));
        better = cand.setLexLess(out.witness.side);
      }
      if (better) {
        bestB = boundary;
        bestD = dmin;
        bestMask = mask;
        out.witness = Cut{canonicalSide(VertexSet::fromMask(g.n, mask)), boundary};
      }
    });
    (void)bestMask;
    out.phi = static_cast<double>(bestB) / static_cast<double>(bestD);
    out.heuristic = false;
    return out;
  }
  out.heuristic = true;
  // spectral sweep upper bound, resolved in spectral.cpp to avoid a cycle;
  // declared there as spectralSweepExpansion.
  extern GraphExpansion spectralSweepExpansion(const MultiGraph& g);
  GraphExpansion sweep = spectralSweepExpansion(g);
  sweep.heuristic = true;
  return sweep;
}

Decomposition naturalDecomposition(const MultiGraph& g, int k) {
  if (k < 1) fail("BadK", "k must be >= 1");
  Decomposition out;
  out.k = k;
  std::vector<VertexSet> work;
  VertexSet all(g.n);
  for (int v = 0; v < g.n; ++v) all.set(v);
  work.push_back(all);
  while (!work.empty()) {
    // deterministic: process the part with the smallest minimum vertex
    size_t pick = 0;
    for (size_t i = 1; i < work.size(); ++i)
      if (work[i].setLexLess(work[pick])) pick = i;
    VertexSet part = work[pick];
    work.erase(work.begin() + static_cast<long>(pick));
    if (part.count() <= 1) {
      out.parts.push_back(part);
      continue;
    }
    auto ind = inducedSubgraph(g, part);
    auto [val, wit] = minEdgeConnectivity(ind.graph);
    if (val >= k) {
      out.parts.push_back(part);
      continue;
    }
    auto idx = part.indices();
    VertexSet a(g.n), b(g.n);
    for (int v : idx) {
      (wit.side.test(ind.vertexMap[v]) ? a : b).set(v);
    }
    if (a.empty() || b.empty()) fail("Internal", "degenerate split in natural decomposition");
    work.push_back(a);
    work.push_back(b);
  }
  std::sort(out.parts.begin(), out.parts.end(),
            [](const VertexSet& x, const VertexSet& y) { return x.setLexLess(y); });
  std::vector<int> partOf(g.n, -1);
  for (size_t i = 0; i < out.parts.size(); ++i)
    for (int v : out.parts[i].indices()) partOf[v] = static_cast<int>(i);
  long long cross = 0;
  for (auto [u, v] : g.edges) cross += partOf[u] != partOf[v];
  out.crossEdges = cross;
  long long ell = static_cast<long long>(out.parts.size());
  out.lemmaBoundHolds = 2 * cross <= 2LL * (k - 1) * (ell - 1);
  return out;
}

Thinness combinatorialThinness(const MultiGraph& g, const std::vector<int>& treeEdges) {
  if (g.n > kExhaustiveCap) fail("TooLarge", "combinatorial thinness is exhaustive-only");
  if (treeEdges.empty()) fail("EmptySide", "edge subset must be nonempty");
  std::vector<double> LG(static_cast<size_t>(g.n) * g.n, 0.0);
  std::vector<double> LT(static_cast<size_t>(g.n) * g.n, 0.0);
  auto add = [&](std::vector<double>& L, int u, int v) {
    L[static_cast<size_t>(u) * g.n + u] += 1;
    L[static_cast<size_t>(v) * g.n + v] += 1;
    L[static_cast<size_t>(u) * g.n + v] -= 1;
    L[static_cast<size_t>(v) * g.n + u] -= 1;
  };
  for (auto [u, v] : g.edges) add(LG, u, v);
  for (int e : treeEdges) {
    if (e < 0 || e >= g.m()) fail("BadEdge", "edge id out of range");
    add(LT, g.edges[e].first, g.edges[e].second);
  }
  long long bestN = -1, bestD = 1;
  Thinness out;
  scanSubsets(g.n, LT.data(), LG.data(), true, [&](uint32_t mask, double qT, double qG) {
    long long tn = llround(qT);
    long long gd = llround(qG);
    if (gd <= 0) return;  // disconnected side; ratio undefined there
    bool better = bestN < 0 || tn * bestD > bestN * gd;
    if (!better && bestN >= 0 && tn * bestD == bestN * gd) {
      VertexSet cand = canonicalSide(VertexSet::fromMask(g.n, mask));
      better = cand.setLexLess(out.witness.side);
    }
    if (better) {
      bestN = tn;
      bestD = gd;
      out.witness = Cut{canonicalSide(VertexSet::fromMask(g.n, mask)), gd};
    }
  });
  out.alpha = static_cast<double>(bestN) / static_cast<double>(bestD);
  return out;
}

}  // namespace thintree
