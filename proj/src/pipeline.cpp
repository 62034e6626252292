#include "thintree/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace thintree {

namespace {

std::vector<double> reffAllEdges(const MultiGraph& g, const MatrixXd& d) {
  MatrixXd dinv = d.llt().solve(MatrixXd::Identity(g.n, g.n));
  std::vector<double> r(g.m());
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    r[e] = dinv(u, u) + dinv(v, v) - 2.0 * dinv(u, v);
  }
  return r;
}

// internal graph of t restricted to an edge subset of G
MultiGraph internalGoodGraph(const NodeViews& nv, const std::vector<char>& inF,
                             std::vector<int>* childIds) {
  std::vector<std::pair<int, int>> edges;
  for (size_t i = 0; i < nv.internalEdgeIds.size(); ++i) {
    if (inF[nv.internalEdgeIds[i]]) edges.push_back(nv.internal.edges[i]);
  }
  if (childIds) *childIds = nv.internalVertexChild;
  return MultiGraph(nv.internal.n, std::move(edges));
}

}  // namespace

PipelineTrace extractGoodEdges(const MultiGraph& g, const Hierarchy& lch0, int k,
                               int maxIters) {
  lch0.checkStructure(g.n);
  if (k < 1) fail("BadK", "k must be >= 1");
  if (maxIters <= 0)
    maxIters = static_cast<int>(std::ceil(std::log2(std::max(2, k)))) + 2;
  int kQuarter = (k + 3) / 4;

  PipelineTrace trace;
  trace.k = k;

  Hierarchy cur = lch0;
  // d0 masses: |O(t)| in the starting hierarchy, summed through refinements
  std::vector<long long> d0(cur.nodes(), 0);
  {
    for (int t = 0; t < cur.nodes(); ++t) {
      if (cur.parent[t] < 0) continue;
      NodeViews nv = hierarchyViews(g, cur, t);
      d0[t] = static_cast<long long>(nv.leaving.size());
    }
  }
  std::vector<int> w;
  for (int t = 0; t < cur.nodes(); ++t)
    if (!cur.isLeaf(t)) w.push_back(t);
  std::vector<int> tset = cur.marked;
  if (tset.empty()) {
    int root = cur.root();
    for (int t = 0; t < cur.nodes(); ++t)
      if (t != root) tset.push_back(t);
  }

  std::vector<char> inF(g.m(), 0);

  for (int iter = 0; iter < maxIters && !w.empty(); ++iter) {
    IterationRecord rec;
    rec.hierarchy = cur;
    rec.w = w;
    rec.t = tset;

    CpInstance inst;
    inst.g = &g;
    inst.program = Program::Tree;
    inst.mode = Mode::Box;
    inst.hierarchy = &cur;
    inst.tset = tset;
    CpSolution sol = solveCP(inst);
    rec.epsilon = sol.objective;
    rec.tau = 16.0 * sol.objective;
    rec.d = sol.D;
    for (int t : tset) {
      auto it = sol.perConstraint.find("node:" + std::to_string(t));
      if (it != sol.perConstraint.end()) rec.nodeAverage[t] = it->second;
    }

    auto reff = reffAllEdges(g, sol.D);
    for (int e = 0; e < g.m(); ++e) {
      if (reff[e] <= rec.tau) {
        rec.goodEdges.push_back(e);
        inF[e] = 1;
      }
    }
    for (int t : tset) {
      NodeViews nv = hierarchyViews(g, cur, t);
      if (!nv.leavingDefined) continue;
      long long inCount = 0;
      for (int e : nv.leaving)
        inCount += std::binary_search(rec.goodEdges.begin(), rec.goodEdges.end(), e);
      rec.coverage[t] = {inCount, static_cast<long long>(nv.leaving.size())};
    }

    // decompose each W node's good-edge internal graph
    std::vector<int> nextW;
    std::map<int, Decomposition> decomps;
    for (int t : w) {
      NodeViews nv = hierarchyViews(g, cur, t);
      std::vector<int> childIds;
      MultiGraph goodInternal = internalGoodGraph(nv, inF, &childIds);
      Decomposition dec = naturalDecomposition(goodInternal, kQuarter);
      rec.partsPerNode[t] = static_cast<int>(dec.parts.size());
      if (nv.internal.n <= kExhaustiveCap && nv.internal.n >= 2 && nv.internal.connected()) {
        rec.internalExpansion[t] = graphExpansion(nv.internal).phi;
      }
      if (dec.parts.size() > 1) {
        nextW.push_back(t);
        decomps[t] = std::move(dec);
      }
    }

    trace.iterations.push_back(std::move(rec));

    // refine the hierarchy for surviving nodes
    std::vector<int> nextT;
    for (int t : nextW) {
      NodeViews nv = hierarchyViews(g, cur, t);
      const Decomposition& dec = decomps[t];
      std::vector<int> newChildren;
      for (const auto& part : dec.parts) {
        auto idx = part.indices();
        if (idx.size() == 1) {
          // singleton part: the existing child stands in for s_{t,j}
          newChildren.push_back(nv.internalVertexChild[idx[0]]);
          continue;
        }
        int s = cur.nodes();
        cur.parent.push_back(t);
        cur.leafVertex.push_back(-1);
        d0.push_back(0);
        long long mass = 0;
        for (int ci : idx) {
          int child = nv.internalVertexChild[ci];
          cur.parent[child] = s;
          mass += d0[child];
        }
        d0[s] = mass;
        newChildren.push_back(s);
      }
      long long total = 0;
      for (int c : newChildren) total += d0[c];
      for (int c : newChildren) {
        if (2 * d0[c] <= total) nextT.push_back(c);  // nondominating
      }
    }
    w = std::move(nextW);
    tset = std::move(nextT);
  }
  if (!w.empty()) trace.nonTermination = true;

  // final certificates
  const auto& iters = trace.iterations;
  if (iters.empty()) fail("BadInstance", "pipeline produced no iterations");
  trace.dAvg = MatrixXd::Zero(g.n, g.n);
  for (const auto& it : iters) trace.dAvg += it.d;
  trace.dAvg /= static_cast<double>(iters.size());
  for (int e = 0; e < g.m(); ++e)
    if (inF[e]) trace.goodEdges.push_back(e);
  std::vector<std::pair<int, int>> fEdges;
  for (int e : trace.goodEdges) fEdges.push_back(g.edges[e]);
  MultiGraph fGraph(g.n, std::move(fEdges));
  trace.finalConnectivity = minEdgeConnectivity(fGraph).first;
  auto reffAvg = reffAllEdges(g, trace.dAvg);
  double mx = 0;
  for (int e : trace.goodEdges) mx = std::max(mx, reffAvg[e]);
  trace.maxReffOverF = mx;
  return trace;
}

CertifyReport certifyPipeline(const MultiGraph& g, const PipelineTrace& trace) {
  CertifyReport rep;
  auto mismatch = [&](const std::string& what) {
    rep.ok = false;
    rep.failures.push_back(what);
  };
  if (trace.iterations.empty()) fail("CertificateMismatch", "empty trace");

  // D_avg: PD and equal to the average of the per-iteration matrices
  MatrixXd avg = MatrixXd::Zero(g.n, g.n);
  for (const auto& it : trace.iterations) avg += it.d;
  avg /= static_cast<double>(trace.iterations.size());
  if ((avg - trace.dAvg).cwiseAbs().maxCoeff() > 1e-6) mismatch("dAvg differs from mean of D_i");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(avg);
  rep.dAvgMinEig = es.eigenvalues()(0);
  if (rep.dAvgMinEig <= 0) mismatch("dAvg is not positive definite");

  if (g.n <= kExhaustiveCap) {
    auto dom = cutDominance(avg, laplacian(g));
    rep.cutDominanceHolds = dom.holds;
    rep.cutDominanceMargin = dom.margin;
    if (!dom.holds) mismatch("dAvg violates cut dominance");
  }

  // recompute each F_i from D_i and tau_i
  std::vector<char> inF(g.m(), 0);
  for (size_t i = 0; i < trace.iterations.size(); ++i) {
    const auto& it = trace.iterations[i];
    auto reff = reffAllEdges(g, it.d);
    std::vector<int> fi;
    for (int e = 0; e < g.m(); ++e)
      if (reff[e] <= it.tau) fi.push_back(e);
    if (fi != it.goodEdges) mismatch("F_" + std::to_string(i) + " does not match D_i and tau_i");
    for (int e : fi) inF[e] = 1;

    // solved objective must dominate every recorded node average
    for (const auto& [t, avgVal] : it.nodeAverage) {
      if (avgVal > it.epsilon + 1e-6)
        mismatch("node average exceeds epsilon at iteration " + std::to_string(i));
    }
    // coverage counts
    for (const auto& [t, cov] : it.coverage) {
      NodeViews nv = hierarchyViews(g, it.hierarchy, t);
      long long cnt = 0;
      for (int e : nv.leaving) cnt += std::binary_search(fi.begin(), fi.end(), e);
      if (cnt != cov.first || static_cast<long long>(nv.leaving.size()) != cov.second)
        mismatch("coverage mismatch at iteration " + std::to_string(i));
    }
  }

  // retired nodes: internal good-edge graphs are k/4-edge-connected
  int kQuarter = (trace.k + 3) / 4;
  for (size_t i = 0; i < trace.iterations.size(); ++i) {
    const auto& it = trace.iterations[i];
    // edges good up to and including iteration i
    std::vector<char> upto(g.m(), 0);
    for (size_t j = 0; j <= i; ++j)
      for (int e : trace.iterations[j].goodEdges) upto[e] = 1;
    for (int t : it.w) {
      auto pit = it.partsPerNode.find(t);
      if (pit == it.partsPerNode.end() || pit->second != 1) continue;  // not retired here
      NodeViews nv = hierarchyViews(g, it.hierarchy, t);
      MultiGraph good = internalGoodGraph(nv, upto, nullptr);
      long long c = minEdgeConnectivity(good).first;
      rep.retiredNodeConnectivity[t] = c;
      if (c < kQuarter)
        mismatch("retired node " + std::to_string(t) + " internal connectivity " +
                 std::to_string(c) + " < " + std::to_string(kQuarter));
    }
  }

  // final set, connectivity, and Reff bound
  std::vector<int> f;
  for (int e = 0; e < g.m(); ++e)
    if (inF[e]) f.push_back(e);
  if (f != trace.goodEdges) mismatch("final good-edge set mismatch");
  std::vector<std::pair<int, int>> fEdges;
  for (int e : f) fEdges.push_back(g.edges[e]);
  MultiGraph fGraph(g.n, std::move(fEdges));
  rep.finalConnectivity = minEdgeConnectivity(fGraph).first;
  if (rep.finalConnectivity != trace.finalConnectivity) mismatch("final connectivity mismatch");
  auto reffAvg = reffAllEdges(g, avg);
  double mx = 0;
  for (int e : f) mx = std::max(mx, reffAvg[e]);
  rep.maxReffOverF = mx;
  if (std::abs(mx - trace.maxReffOverF) > 1e-6) mismatch("max Reff over F mismatch");

  if (!rep.ok) {
    std::string all;
    for (const auto& s : rep.failures) all += s + "; ";
    fail("CertificateMismatch", all);
  }
  return rep;
}

}  // namespace thintree
