#include "thintree/cp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "thintree/generators.hpp"
#include "thintree/util.hpp"

namespace thintree {

namespace {

// ---- symmetric-matrix coordinates --------------------------------------

struct SymBasis {
  int n = 0;
  std::vector<std::pair<int, int>> ab;  // index -> (a, b) with a <= b

  explicit SymBasis(int n_) : n(n_) {
    for (int b = 0; b < n; ++b)
      for (int a = 0; a <= b; ++a) ab.emplace_back(a, b);
  }
  int size() const { return static_cast<int>(ab.size()); }

  MatrixXd toMat(const VectorXd& z) const {
    MatrixXd d(n, n);
    for (int i = 0; i < size(); ++i) {
      auto [a, b] = ab[i];
      d(a, b) = z(i);
      d(b, a) = z(i);
    }
    return d;
  }
  VectorXd toVec(const MatrixXd& d) const {
    VectorXd z(size());
    for (int i = 0; i < size(); ++i) z(i) = d(ab[i].first, ab[i].second);
    return z;
  }
  // gradient of trace(C * D) wrt coordinates, C symmetric
  void traceGrad(const MatrixXd& c, VectorXd& out) const {
    for (int i = 0; i < size(); ++i) {
      auto [a, b] = ab[i];
      out(i) = a == b ? c(a, a) : 2.0 * c(a, b);
    }
  }
  // H += coef * [trace(C E_i M E_j)]_{ij}, C and M symmetric
  void addKron(MatrixXd& h, const MatrixXd& c, const MatrixXd& m, double coef) const {
    int nb = size();
    for (int i = 0; i < nb; ++i) {
      auto [a, b] = ab[i];
      for (int j = i; j < nb; ++j) {
        auto [cc, dd] = ab[j];
        double val = 0;
        // expand E_i = sum over (p,q), E_j = sum over (r,s)
        const int pi[2] = {a, b}, qi[2] = {b, a};
        const int rj[2] = {cc, dd}, sj[2] = {dd, cc};
        int ni = a == b ? 1 : 2, nj = cc == dd ? 1 : 2;
        for (int x = 0; x < ni; ++x)
          for (int y = 0; y < nj; ++y) val += m(qi[x], rj[y]) * c(sj[y], pi[x]);
        h(i, j) += coef * val;
        if (i != j) h(j, i) += coef * val;
      }
    }
  }
};

struct Group {
  std::string key;
  MatrixXd L;  // weighted Laplacian: f(D) = trace(L D^{-1})
};

MatrixXd pairLaplacian(int n, int u, int v, double w) {
  MatrixXd L = MatrixXd::Zero(n, n);
  L(u, u) += w;
  L(v, v) += w;
  L(u, v) -= w;
  L(v, u) -= w;
  return L;
}

MatrixXd groupLaplacian(const MultiGraph& g, const std::vector<int>& edgeIds) {
  MatrixXd L = MatrixXd::Zero(g.n, g.n);
  double w = 1.0 / static_cast<double>(edgeIds.size());
  for (int e : edgeIds) {
    auto [u, v] = g.edges[e];
    L(u, u) += w;
    L(v, v) += w;
    L(u, v) -= w;
    L(v, u) -= w;
  }
  return L;
}

std::string cutKey(const VertexSet& s) {
  std::ostringstream os;
  os << "cut:";
  bool first = true;
  for (int v : s.indices()) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  return os.str();
}

double quadForm(const MatrixXd& m, const VertexSet& s) {
  double q = 0;
  auto idx = s.indices();
  for (int a : idx)
    for (int b : idx) q += m(a, b);
  return q;
}

// max over cuts of the average edge value, exhaustive (n <= 20)
std::pair<double, VertexSet> maxAverageOverCuts(const MultiGraph& g,
                                                const std::vector<double>& edgeVal) {
  MatrixXd Lr = MatrixXd::Zero(g.n, g.n);
  MatrixXd Lg = laplacian(g);
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    double w = edgeVal[e];
    Lr(u, u) += w;
    Lr(v, v) += w;
    Lr(u, v) -= w;
    Lr(v, u) -= w;
  }
  std::vector<double> A(static_cast<size_t>(g.n) * g.n), B(A.size());
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      A[static_cast<size_t>(j) * g.n + i] = Lr(i, j);
      B[static_cast<size_t>(j) * g.n + i] = Lg(i, j);
    }
  double best = -1;
  uint32_t bestMask = 1;
  scanSubsets(g.n, A.data(), B.data(), true, [&](uint32_t mask, double qr, double qg) {
    if (qg < 0.5) return;  // no crossing edges
    double avg = qr / qg;
    if (avg > best) {
      best = avg;
      bestMask = mask;
    }
  });
  return {best, VertexSet::fromMask(g.n, bestMask)};
}

struct BarrierResult {
  VectorXd z;
  int newtonSteps = 0;
};

// minimize t*eps + barrier over (vech(D), eps)
class BarrierProblem {
 public:
  BarrierProblem(const MultiGraph& g, const std::vector<Group>& groups,
                 const std::vector<VertexSet>& cuts, double delta)
      : g_(g), basis_(g.n), groups_(groups), cuts_(cuts), delta_(delta), LG_(laplacian(g)) {
    cutRhs_.reserve(cuts_.size());
    cutGrad_.reserve(cuts_.size());
    for (const auto& s : cuts_) {
      cutRhs_.push_back(quadForm(LG_, s));
      VectorXd cg = VectorXd::Zero(basis_.size() + 1);
      for (int i = 0; i < basis_.size(); ++i) {
        auto [a, b] = basis_.ab[i];
        double val = a == b ? (s.test(a) ? 1.0 : 0.0)
                            : (s.test(a) && s.test(b) ? 2.0 : 0.0);
        cg(i) = -val;  // d/dz of 1^T (L_G - D) 1
      }
      cutGrad_.push_back(std::move(cg));
    }
  }

  int dim() const { return basis_.size() + 1; }
  const SymBasis& basis() const { return basis_; }

  bool feasible(const VectorXd& z) const {
    MatrixXd d = basis_.toMat(z.head(basis_.size()));
    Eigen::LLT<MatrixXd> lltFloor(d - delta_ * MatrixXd::Identity(g_.n, g_.n));
    if (lltFloor.info() != Eigen::Success) return false;
    Eigen::LLT<MatrixXd> llt(d);
    if (llt.info() != Eigen::Success) return false;
    MatrixXd dinv = llt.solve(MatrixXd::Identity(g_.n, g_.n));
    double eps = z(basis_.size());
    for (const auto& gr : groups_)
      if (eps - (gr.L.cwiseProduct(dinv)).sum() <= 0) return false;
    for (size_t c = 0; c < cuts_.size(); ++c)
      if (cutRhs_[c] - quadForm(d, cuts_[c]) <= 0) return false;
    return true;
  }

  double value(const VectorXd& z, double t) const {
    MatrixXd d = basis_.toMat(z.head(basis_.size()));
    double eps = z(basis_.size());
    Eigen::LLT<MatrixXd> lltFloor(d - delta_ * MatrixXd::Identity(g_.n, g_.n));
    if (lltFloor.info() != Eigen::Success) return 1e300;
    Eigen::LLT<MatrixXd> llt(d);
    if (llt.info() != Eigen::Success) return 1e300;
    MatrixXd dinv = llt.solve(MatrixXd::Identity(g_.n, g_.n));
    double val = t * eps;
    // -log det(D - delta I)
    double ld = 0;
    const MatrixXd& packed = lltFloor.matrixLLT();
    for (int i = 0; i < g_.n; ++i) ld += std::log(packed(i, i));
    val -= 2.0 * ld;
    for (const auto& gr : groups_) {
      double s = eps - (gr.L.cwiseProduct(dinv)).sum();
      if (s <= 0) return 1e300;
      val -= std::log(s);
    }
    for (size_t c = 0; c < cuts_.size(); ++c) {
      double s = cutRhs_[c] - quadForm(d, cuts_[c]);
      if (s <= 0) return 1e300;
      val -= std::log(s);
    }
    return val;
  }

  void derivatives(const VectorXd& z, double t, VectorXd& grad, MatrixXd& hess) const {
    const int nb = basis_.size();
    MatrixXd d = basis_.toMat(z.head(nb));
    double eps = z(nb);
    MatrixXd dfloor = d - delta_ * MatrixXd::Identity(g_.n, g_.n);
    MatrixXd mFloor = dfloor.llt().solve(MatrixXd::Identity(g_.n, g_.n));
    MatrixXd dinv = d.llt().solve(MatrixXd::Identity(g_.n, g_.n));

    grad = VectorXd::Zero(dim());
    hess = MatrixXd::Zero(dim(), dim());
    grad(nb) += t;

    // -log det(D - delta I)
    VectorXd tg(nb);
    basis_.traceGrad(mFloor, tg);
    grad.head(nb) -= tg;
    MatrixXd hd = MatrixXd::Zero(nb, nb);
    basis_.addKron(hd, mFloor, mFloor, 1.0);
    hess.topLeftCorner(nb, nb) += hd;

    // groups: s = eps - trace(L D^{-1})
    for (const auto& gr : groups_) {
      MatrixXd c = dinv * gr.L * dinv;
      double s = eps - (gr.L.cwiseProduct(dinv)).sum();
      VectorXd ds = VectorXd::Zero(dim());
      VectorXd cg(nb);
      basis_.traceGrad(c, cg);
      ds.head(nb) = cg;  // d s / d z = + trace(C E_i)
      ds(nb) = 1.0;
      grad -= ds / s;
      hess += (ds * ds.transpose()) / (s * s);
      MatrixXd hf = MatrixXd::Zero(nb, nb);
      basis_.addKron(hf, c, dinv, 2.0);
      hess.topLeftCorner(nb, nb) += hf / s;
    }

    // cuts: s = rhs - 1^T D 1
    for (size_t ci = 0; ci < cuts_.size(); ++ci) {
      double s = cutRhs_[ci] - quadForm(d, cuts_[ci]);
      grad -= cutGrad_[ci] / s;
      hess += (cutGrad_[ci] * cutGrad_[ci].transpose()) / (s * s);
    }
  }

  BarrierResult solve(const VectorXd& z0, double tolObj, int totalTerms) const {
    BarrierResult res;
    res.z = z0;
    double t = 1.0;
    const double mu = 5.0;  // barrier parameter decreased x0.2 per outer step
    VectorXd grad;
    MatrixXd hess;
    while (true) {
      for (int it = 0; it < 80; ++it) {
        derivatives(res.z, t, grad, hess);
        Eigen::LDLT<MatrixXd> ldlt(hess);
        VectorXd dz = ldlt.solve(-grad);
        if (!dz.allFinite()) {
          hess.diagonal().array() += 1e-10 * (1.0 + hess.diagonal().cwiseAbs().maxCoeff());
          dz = hess.ldlt().solve(-grad);
          if (!dz.allFinite()) break;
        }
        double decrement = -grad.dot(dz);
        if (decrement < 0) {  // fallback to gradient direction on indefiniteness
          dz = -grad;
          decrement = grad.squaredNorm();
        }
        if (decrement / 2.0 < 1e-10) break;
        double f0 = value(res.z, t);
        double alpha = 1.0;
        int bt = 0;
        while (bt < 60) {
          VectorXd cand = res.z + alpha * dz;
          double f1 = value(cand, t);
          if (f1 <= f0 - 0.25 * alpha * decrement + 1e-14 * std::abs(f0)) {
            res.z = cand;
            break;
          }
          alpha *= 0.5;
          ++bt;
        }
        ++res.newtonSteps;
        if (bt >= 60) break;
        if (decrement / 2.0 < 1e-9) break;
      }
      if (static_cast<double>(totalTerms) / t < tolObj * 0.5) break;
      t *= mu;
    }
    return res;
  }

 private:
  const MultiGraph& g_;
  SymBasis basis_;
  std::vector<Group> groups_;
  std::vector<VertexSet> cuts_;
  double delta_;
  MatrixXd LG_;
  std::vector<double> cutRhs_;
  std::vector<VectorXd> cutGrad_;
};

std::vector<Group> initialGroups(const CpInstance& inst) {
  const MultiGraph& g = *inst.g;
  std::vector<Group> groups;
  switch (inst.program) {
    case Program::Max: {
      // one group per distinct pair (parallel copies share the constraint)
      std::map<std::pair<int, int>, int> seen;
      for (auto [u, v] : g.edges) {
        auto key = std::minmax(u, v);
        if (seen.emplace(key, 1).second) {
          groups.push_back({"edge:" + std::to_string(key.first) + "-" + std::to_string(key.second),
                            pairLaplacian(g.n, key.first, key.second, 1.0)});
        }
      }
      break;
    }
    case Program::Average: {
      // degree cuts seed the lazy generation
      for (int v = 0; v < g.n; ++v) {
        VertexSet s(g.n);
        s.set(v);
        std::vector<int> ids;
        for (int e = 0; e < g.m(); ++e)
          if (g.edges[e].first == v || g.edges[e].second == v) ids.push_back(e);
        if (!ids.empty()) groups.push_back({cutKey(canonicalSide(s)), groupLaplacian(g, ids)});
      }
      break;
    }
    case Program::Tree: {
      if (!inst.hierarchy) fail("BadInstance", "Tree program needs a hierarchy");
      for (int t : inst.tset) {
        NodeViews nv = hierarchyViews(g, *inst.hierarchy, t);
        if (!nv.leavingDefined || nv.leaving.empty()) continue;
        groups.push_back({"node:" + std::to_string(t), groupLaplacian(g, nv.leaving)});
      }
      if (groups.empty()) fail("BadInstance", "no nonempty O(t) among the designated nodes");
      break;
    }
  }
  return groups;
}

}  // namespace

std::optional<Violation> separationOracle(const MultiGraph& g, const MatrixXd& d,
                                          double tolFeas, uint64_t seed) {
  MatrixXd diff = d - laplacian(g);  // violated when 1^T diff 1 > 0
  const int n = g.n;
  if (n <= kExhaustiveCap) {
    std::vector<double> A(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) A[static_cast<size_t>(j) * n + i] = diff(i, j);
    double best = 0;
    uint32_t bestMask = 0;
    scanSubsets(n, A.data(), nullptr, false, [&](uint32_t mask, double q, double) {
      if (q > best) {
        best = q;
        bestMask = mask;
      }
    });
    if (best > tolFeas) return Violation{VertexSet::fromMask(n, bestMask), best, false};
    return std::nullopt;
  }
  // single-bit-flip local search, 20 seeded restarts
  Rng rng(seed * 0x9e37ULL + 17);
  double best = 0;
  VertexSet bestSet(n);
  for (int restart = 0; restart < 20; ++restart) {
    std::vector<char> in(n, 0);
    for (int v = 0; v < n; ++v) in[v] = rng.below(2) ? 1 : 0;
    VectorXd ind = VectorXd::Zero(n);
    for (int v = 0; v < n; ++v) ind(v) = in[v];
    VectorXd w = diff * ind;
    double q = ind.dot(w);
    bool improved = true;
    while (improved) {
      improved = false;
      for (int v = 0; v < n; ++v) {
        double delta = in[v] ? -2.0 * w(v) + diff(v, v) : 2.0 * w(v) + diff(v, v);
        if (delta > 1e-12) {
          double sign = in[v] ? -1.0 : 1.0;
          w += sign * diff.col(v);
          q += delta;
          in[v] = !in[v];
          improved = true;
        }
      }
    }
    int cnt = 0;
    for (char c : in) cnt += c;
    if (cnt == 0 || cnt == n) continue;
    if (q > best) {
      best = q;
      VertexSet s(n);
      for (int v = 0; v < n; ++v)
        if (in[v]) s.set(v);
      bestSet = s;
    }
  }
  if (best > tolFeas) return Violation{bestSet, best, true};
  return std::nullopt;
}

CpSolution solveCP(const CpInstance& inst) {
  if (!inst.g) fail("BadInstance", "missing graph");
  const MultiGraph& g = *inst.g;
  if (!g.connected()) fail("Disconnected", "CP programs need a connected graph");
  if (inst.program == Program::Tree && inst.hierarchy && inst.declaredK > 0) {
    auto rep = validateLCH(g, *inst.hierarchy, inst.declaredK, inst.declaredLambda, inst.tset);
    if (!rep.valid()) fail("InvalidHierarchy", "hierarchy fails the declared LCH conditions");
  }
  MatrixXd LG = laplacian(g);
  double delta = inst.pdFloorScale * LG.trace() / g.n;

  CpSolution sol;
  sol.delta = delta;
  sol.heuristic = g.n > kExhaustiveCap;

  auto perConstraintFill = [&](const std::vector<Group>& groups, const MatrixXd& dinv) {
    for (const auto& gr : groups)
      sol.perConstraint[gr.key] = (gr.L.cwiseProduct(dinv)).sum();
  };

  if (inst.mode == Mode::Psd) {
    // psd-constrained optimum is L_G itself; report at the delta floor
    sol.D = LG + delta * MatrixXd::Identity(g.n, g.n);
    MatrixXd dinv = sol.D.llt().solve(MatrixXd::Identity(g.n, g.n));
    auto groups = initialGroups(inst);
    double mx = 0;
    for (const auto& gr : groups) mx = std::max(mx, (gr.L.cwiseProduct(dinv)).sum());
    if (inst.program == Program::Average && g.n <= kExhaustiveCap) {
      std::vector<double> r(g.m());
      for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        r[e] = incidenceVector(g.n, u, v).dot(dinv * incidenceVector(g.n, u, v));
      }
      auto [avg, side] = maxAverageOverCuts(g, r);
      mx = std::max(mx, avg);
    }
    sol.objective = mx;
    perConstraintFill(groups, dinv);
    sol.feasibilityMargin = -delta * (g.n - 1);  // D exceeds L_G by the floor
    return sol;
  }

  std::vector<Group> groups = initialGroups(inst);
  // initial cuts: all singleton subsets plus the sweep cut from the
  // degree-weighted Fiedler sweep
  std::vector<VertexSet> cuts;
  for (int v = 0; v < g.n; ++v) {
    VertexSet s(g.n);
    s.set(v);
    cuts.push_back(s);
  }
  if (g.n >= 2 && g.connected()) {
    Cut sweep = spectralPartition(g);
    cuts.push_back(sweep.side);
    cuts.push_back(sweep.side.complement());
  }

  // strictly feasible start: delta I + L_G/2 + small J
  MatrixXd D0 = delta * MatrixXd::Identity(g.n, g.n) + 0.5 * LG +
                (0.1 / (static_cast<double>(g.n) * g.n)) * MatrixXd::Ones(g.n, g.n);

  SymBasis basis(g.n);
  VectorXd z;
  int rounds = 0;
  const int maxRounds = 50;
  bool certified = false;
  while (rounds < maxRounds) {
    ++rounds;
    BarrierProblem prob(g, groups, cuts, delta);
    MatrixXd dinv0 = D0.llt().solve(MatrixXd::Identity(g.n, g.n));
    double eps0 = 0;
    for (const auto& gr : groups) eps0 = std::max(eps0, (gr.L.cwiseProduct(dinv0)).sum());
    eps0 = eps0 * 1.05 + 1e-3;
    VectorXd z0(prob.dim());
    z0.head(basis.size()) = basis.toVec(D0);
    z0(basis.size()) = eps0;
    if (!prob.feasible(z0)) fail("Internal", "initial point infeasible");
    int totalTerms = 1 + static_cast<int>(groups.size() + cuts.size());
    BarrierResult res = prob.solve(z0, inst.tolObj, totalTerms);
    sol.trace.newtonSteps += res.newtonSteps;
    z = res.z;
    MatrixXd D = basis.toMat(z.head(basis.size()));

    // cut separation
    auto vio = separationOracle(g, D, inst.tolFeas, inst.seed);
    if (vio) {
      cuts.push_back(vio->side);
      sol.trace.cutsAdded++;
      continue;
    }
    // group separation for Average
    if (inst.program == Program::Average && g.n <= kExhaustiveCap) {
      MatrixXd dinv = D.llt().solve(MatrixXd::Identity(g.n, g.n));
      std::vector<double> r(g.m());
      for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        r[e] = incidenceVector(g.n, u, v).dot(dinv * incidenceVector(g.n, u, v));
      }
      auto [avg, side] = maxAverageOverCuts(g, r);
      double eps = z(basis.size());
      if (avg > eps + 10 * inst.tolObj) {
        std::vector<int> ids;
        for (int e = 0; e < g.m(); ++e) {
          auto [u, v] = g.edges[e];
          if (side.test(u) != side.test(v)) ids.push_back(e);
        }
        std::string key = cutKey(canonicalSide(side));
        bool have = false;
        for (const auto& gr : groups) have = have || gr.key == key;
        if (!have) {
          groups.push_back({key, groupLaplacian(g, ids)});
          sol.trace.groupsAdded++;
          continue;
        }
      }
    }
    certified = true;
    break;
  }
  if (!certified) fail("SolverStalled", "no progress after 50 outer rounds");
  sol.trace.outerRounds = rounds;

  MatrixXd D = basis.toMat(z.head(basis.size()));
  sol.D = 0.5 * (D + D.transpose());
  MatrixXd dinv = sol.D.llt().solve(MatrixXd::Identity(g.n, g.n));
  double mx = 0;
  for (const auto& gr : groups) mx = std::max(mx, (gr.L.cwiseProduct(dinv)).sum());
  if (inst.program == Program::Average && g.n <= kExhaustiveCap) {
    std::vector<double> r(g.m());
    for (int e = 0; e < g.m(); ++e) {
      auto [u, v] = g.edges[e];
      r[e] = incidenceVector(g.n, u, v).dot(dinv * incidenceVector(g.n, u, v));
    }
    auto [avg, side] = maxAverageOverCuts(g, r);
    mx = std::max(mx, avg);
  }
  sol.objective = mx;
  perConstraintFill(groups, dinv);
  sol.activeCuts = cuts;

  // final feasibility margin over all subsets (exhaustive when possible)
  if (g.n <= kExhaustiveCap) {
    MatrixXd diff = LG - sol.D;
    std::vector<double> A(static_cast<size_t>(g.n) * g.n);
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) A[static_cast<size_t>(j) * g.n + i] = diff(i, j);
    double worst = 1e300;
    scanSubsets(g.n, A.data(), nullptr, false, [&](uint32_t, double q, double) {
      worst = std::min(worst, q);
    });
    sol.feasibilityMargin = worst;
  } else {
    auto vio = separationOracle(g, sol.D, -1e300, inst.seed);
    sol.feasibilityMargin = vio ? -vio->amount : 0.0;
  }
  return sol;
}

// ---- dual evaluation ----------------------------------------------------

namespace {

MatrixXd weightedX(const DualWitness& w) {
  MatrixXd x = w.X;
  if (w.rowWeights.size() > 0) {
    if (w.rowWeights.size() != x.rows()) fail("BadWitness", "rowWeights size mismatch");
    for (int i = 0; i < x.rows(); ++i) x.row(i) *= std::sqrt(std::max(0.0, w.rowWeights(i)));
  }
  return x;
}

void checkSemiorthogonal(const DualWitness& w) {
  if (w.U.empty()) return;
  const long h = w.X.rows();
  MatrixXd rows(static_cast<long>(w.U.size()), h);
  long r = 0;
  for (const auto& [e, row] : w.U) {
    if (row.size() != h) fail("BadWitness", "U row dimension mismatch");
    rows.row(r++) = row.transpose();
  }
  MatrixXd gram = rows * rows.transpose();
  double err = (gram - MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (err > 1e-8) fail("BadWitness", "U rows are not orthonormal");
}

}  // namespace

TreeDualValue evalDualTree(const MultiGraph& g, const Hierarchy& h,
                           const std::vector<int>& tset, const DualWitness& w) {
  if (w.X.cols() != g.n) fail("BadWitness", "X column count must equal vertex count");
  checkSemiorthogonal(w);
  MatrixXd X = weightedX(w);
  auto xe = [&](int e) -> VectorXd {
    auto [u, v] = g.edges[e];
    return X.col(u) - X.col(v);
  };
  double denom = 0;
  for (int e = 0; e < g.m(); ++e) denom += xe(e).squaredNorm();
  if (denom <= 0) fail("ZeroDenominator", "embedding collapses every edge");

  double num = 0;
  std::map<int, std::vector<int>> leavings;
  for (int t : tset) {
    NodeViews nv = hierarchyViews(g, h, t);
    if (!nv.leavingDefined || nv.leaving.empty()) continue;
    leavings[t] = nv.leaving;
    double s = 0;
    for (int e : nv.leaving) {
      auto it = w.U.find(e);
      if (it != w.U.end()) s += it->second.dot(xe(e));
    }
    num += s * s / static_cast<double>(nv.leaving.size());
  }
  TreeDualValue out;
  out.ratio = num / denom;
  out.denominator = denom;

  if (!w.lambdaNodes.empty()) {
    double lsum = 0;
    for (auto& [t, l] : w.lambdaNodes) {
      if (l < -1e-12) fail("BadDistribution", "negative node weight");
      lsum += l;
    }
    if (std::abs(lsum - 1.0) > 1e-9) fail("BadDistribution", "node weights must sum to 1");
    // W_{e,e} = sqrt(sum_{t: e in O(t)} lambda_t / |O(t)|)
    VectorXd wdiag = VectorXd::Zero(g.m());
    for (auto& [t, l] : w.lambdaNodes) {
      auto it = leavings.find(t);
      if (it == leavings.end()) {
        NodeViews nv = hierarchyViews(g, h, t);
        if (!nv.leavingDefined || nv.leaving.empty()) continue;
        it = leavings.emplace(t, nv.leaving).first;
      }
      for (int e : it->second) wdiag(e) += l / static_cast<double>(it->second.size());
    }
    MatrixXd xw(X.rows(), g.m());
    for (int e = 0; e < g.m(); ++e) xw.col(e) = xe(e) * std::sqrt(wdiag(e));
    Eigen::JacobiSVD<MatrixXd> svd(xw);
    double nuc = svd.singularValues().sum();
    out.nuclearRatio = nuc * nuc / denom;
  }
  return out;
}

AverageDualValue evalDualAverage(const MultiGraph& g, const DualWitness& w) {
  if (w.X.cols() != g.n) fail("BadWitness", "X column count must equal vertex count");
  if (w.lambdaCuts.empty()) fail("BadDistribution", "Average dual needs cut weights");
  checkSemiorthogonal(w);
  double lsum = 0;
  for (auto& [side, l] : w.lambdaCuts) {
    if (l < 0) fail("BadDistribution", "negative cut weight");
    lsum += l;
  }
  if (std::abs(lsum - 1.0) > 1e-9) fail("BadDistribution", "cut weights must sum to 1");

  MatrixXd X = weightedX(w);
  auto xe = [&](int e) -> VectorXd {
    auto [u, v] = g.edges[e];
    return X.col(u) - X.col(v);
  };
  double denom = 0;
  for (int e = 0; e < g.m(); ++e) denom += xe(e).squaredNorm();
  if (denom <= 0) fail("ZeroDenominator", "embedding collapses every edge");

  // gamma_e = sum over cuts containing e of lambda / |E(S, Sbar)|
  VectorXd gamma = VectorXd::Zero(g.m());
  for (auto& [side, l] : w.lambdaCuts) {
    long long sz = 0;
    for (auto [u, v] : g.edges) sz += side.test(u) != side.test(v);
    if (sz == 0) continue;
    for (int e = 0; e < g.m(); ++e) {
      auto [u, v] = g.edges[e];
      if (side.test(u) != side.test(v)) gamma(e) += l / static_cast<double>(sz);
    }
  }
  double s = 0;
  for (const auto& [e, row] : w.U) {
    if (e < 0 || e >= g.m()) fail("BadWitness", "U edge id out of range");
    s += std::sqrt(gamma(e)) * row.dot(xe(e));
  }
  AverageDualValue out;
  out.ratio = s * s / denom;
  out.denominator = denom;
  return out;
}

DualWitness dyadicWitness(int h, int k) {
  if (h < 1) fail("BadK", "dyadic witness needs h >= 1");
  int n = 1 << h;  // embedding dimension; graph has n + 1 vertices
  DualWitness w;
  w.X = MatrixXd::Zero(n, n + 1);
  for (int v = 0; v <= n; ++v)
    for (int c = 0; c < v; ++c) w.X(c, v) = 1.0;  // X_v = 1 in first v coords

  // Haar-type rows for the aligned edges {2j*2^l, (2j+1)*2^l}, levels
  // l = 0..h-1; level 0 uses the first parallel copy of the short edge.
  // Signs are chosen so <U^e, X_e> = 2^{(l-1)/2} > 0 for the low->high
  // orientation the dyadic generator uses.
  for (int l = 0; l < h; ++l) {
    int len = 1 << l;
    double mag = 1.0 / std::sqrt(2.0 * len);
    for (int j = 0; 2 * j * len < n; ++j) {
      int lo = 2 * j * len;
      VectorXd row = VectorXd::Zero(n);
      for (int c = lo; c < lo + len; ++c) row(c) = -mag;
      for (int c = lo + len; c < lo + 2 * len; ++c) row(c) = mag;
      int e = l == 0 ? dyadicShortEdgeId(h, k, lo, 0) : dyadicLongEdgeId(h, k, l, 2 * j);
      w.U[e] = row;
    }
  }
  // uniform distribution over the threshold cuts
  for (int ell = 0; ell < n; ++ell) {
    VertexSet side(n + 1);
    for (int v = 0; v <= ell; ++v) side.set(v);
    w.lambdaCuts.emplace_back(side, 1.0 / static_cast<double>(n));
  }
  return w;
}

PairShortcut singlePairShortcut(const MultiGraph& g, int a, int b) {
  if (a == b) fail("BadPair", "endpoints must differ");
  long long k = localEdgeConnectivity(g, a, b);  // throws Disconnected
  MatrixXd D = static_cast<double>(k) *
               incidenceVector(g.n, a, b) * incidenceVector(g.n, a, b).transpose();
  return PairShortcut{PsdMatrix(std::move(D)), k};
}

}  // namespace thintree
