#include "thintree/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace thintree {

MatrixXd laplacian(const MultiGraph& g) {
  MatrixXd L = MatrixXd::Zero(g.n, g.n);
  for (auto [u, v] : g.edges) {
    L(u, u) += 1;
    L(v, v) += 1;
    L(u, v) -= 1;
    L(v, u) -= 1;
  }
  return L;
}

VectorXd incidenceVector(int n, int u, int v) {
  VectorXd x = VectorXd::Zero(n);
  x(u) = 1;
  x(v) = -1;
  return x;
}

SpectralView::SpectralView(const MultiGraph& g) : g_(g), L_(laplacian(g)) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(L_);
  vals_ = es.eigenvalues();
  vecs_ = es.eigenvectors();
  double lmax = vals_.size() ? std::max(0.0, vals_(vals_.size() - 1)) : 0.0;
  double cutoff = 1e-9 * std::max(lmax, 1.0);
  pinvRank_ = 0;
  for (int i = 0; i < vals_.size(); ++i)
    if (vals_(i) > cutoff) ++pinvRank_;
  components_ = g.componentCount();
}

MatrixXd SpectralView::pinv() const {
  const int n = g_.n;
  MatrixXd P = MatrixXd::Zero(n, n);
  for (int i = n - pinvRank_; i < n; ++i)
    P += (1.0 / vals_(i)) * vecs_.col(i) * vecs_.col(i).transpose();
  return P;
}

MatrixXd SpectralView::pinvSqrt() const {
  const int n = g_.n;
  MatrixXd P = MatrixXd::Zero(n, n);
  for (int i = n - pinvRank_; i < n; ++i)
    P += (1.0 / std::sqrt(vals_(i))) * vecs_.col(i) * vecs_.col(i).transpose();
  return P;
}

double SpectralView::reff(int u, int v) const {
  if (u == v) fail("BadPair", "endpoints must differ");
  auto comp = g_.componentOf();
  if (comp[u] != comp[v]) fail("Disconnected", "pair lies in different components");
  double r = 0;
  const int n = g_.n;
  for (int i = n - pinvRank_; i < n; ++i) {
    double proj = vecs_(u, i) - vecs_(v, i);
    r += proj * proj / vals_(i);
  }
  return r;
}

double SpectralView::reffEdge(int e) const {
  auto [u, v] = g_.edges.at(e);
  return reff(u, v);
}

std::vector<double> SpectralView::reffAll() const {
  std::vector<double> out;
  out.reserve(g_.edges.size());
  for (int e = 0; e < g_.m(); ++e) out.push_back(reffEdge(e));
  return out;
}

PsdMatrix::PsdMatrix(MatrixXd m, double floor) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) fail("BadMatrix", "matrix must be square");
  double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) fail("BadMatrix", "matrix is not symmetric");
  m_ = 0.5 * (m_ + m_.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m_);
  vals_ = es.eigenvalues();
  vecs_ = es.eigenvectors();
  minEig_ = vals_(0);
  if (minEig_ < floor * scale - 1e-12)
    fail("NotPsd", "minimum eigenvalue " + std::to_string(minEig_));
}

double PsdMatrix::reff(int u, int v) const {
  if (u == v) fail("BadPair", "endpoints must differ");
  const int nn = n();
  if (u < 0 || v < 0 || u >= nn || v >= nn) fail("BadPair", "vertex out of range");
  VectorXd x = incidenceVector(nn, u, v);
  VectorXd c = vecs_.transpose() * x;
  double lmax = std::max(std::abs(vals_(nn - 1)), std::abs(vals_(0)));
  double cutoff = 1e-9 * std::max(lmax, 1e-300);
  double r = 0;
  double residual2 = 0;
  for (int i = 0; i < nn; ++i) {
    if (vals_(i) > cutoff) {
      r += c(i) * c(i) / vals_(i);
    } else {
      residual2 += c(i) * c(i);
    }
  }
  if (std::sqrt(residual2) > 1e-6 * x.norm())
    fail("OutOfRange", "incidence vector leaves the range space");
  return r;
}

double effectiveResistance(const SpectralView& view, int u, int v) { return view.reff(u, v); }
double effectiveResistance(const PsdMatrix& m, int u, int v) { return m.reff(u, v); }

double spectralThinness(const MultiGraph& g, const std::vector<int>& edgeSubset) {
  if (!g.connected()) fail("Disconnected", "spectral thinness needs a connected graph");
  if (edgeSubset.empty()) fail("EmptySide", "edge subset must be nonempty");
  SpectralView view(g);
  MatrixXd LT = MatrixXd::Zero(g.n, g.n);
  for (int e : edgeSubset) {
    auto [u, v] = g.edges.at(e);
    LT(u, u) += 1;
    LT(v, v) += 1;
    LT(u, v) -= 1;
    LT(v, u) -= 1;
  }
  MatrixXd half = view.pinvSqrt();
  MatrixXd sandwich = half * LT * half;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sandwich);
  return es.eigenvalues()(g.n - 1);
}

namespace {

struct Sweep {
  double phi = 0;
  VertexSet side;
  long long boundary = 0;
};

// shared by spectralPartition and the heuristic graphExpansion bound
Sweep fiedlerSweep(const MultiGraph& g) {
  SpectralView view(g);
  const int n = g.n;
  // Fiedler vector: eigenvector of the second smallest eigenvalue
  VectorXd f = view.eigenvectors().col(1);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (f(a) != f(b)) return f(a) < f(b);
    return a < b;
  });
  auto deg = g.degrees();
  long long dTotal = 0;
  for (int d : deg) dTotal += d;
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  // prefix boundary maintained incrementally: adding vertex v toggles the
  // crossing state of each incident edge
  std::vector<std::vector<int>> inc(n);
  for (int e = 0; e < g.m(); ++e) {
    inc[g.edges[e].first].push_back(e);
    inc[g.edges[e].second].push_back(e);
  }
  std::vector<char> inS(n, 0);
  long long boundary = 0, dS = 0;
  long long bestB = -1, bestDmin = 1;
  int bestPrefix = -1;
  for (int i = 0; i < n - 1; ++i) {
    int v = order[i];
    for (int e : inc[v]) {
      auto [a, b] = g.edges[e];
      int other = a == v ? b : a;
      boundary += inS[other] ? -1 : 1;
    }
    inS[v] = 1;
    dS += deg[v];
    long long dmin = std::min(dS, dTotal - dS);
    if (dmin <= 0) continue;
    bool better = bestB < 0 || boundary * bestDmin < bestB * dmin;
    // among equal-phi prefixes keep the smallest prefix
    if (better) {
      bestB = boundary;
      bestDmin = dmin;
      bestPrefix = i;
    }
  }
  if (bestPrefix < 0) fail("Disconnected", "degenerate sweep");
  VertexSet side(n);
  for (int i = 0; i <= bestPrefix; ++i) side.set(order[i]);
  Sweep out;
  out.phi = static_cast<double>(bestB) / static_cast<double>(bestDmin);
  out.side = side;
  out.boundary = bestB;
  return out;
}

}  // namespace

// declared in cuts.cpp for the heuristic branch of graphExpansion
GraphExpansion spectralSweepExpansion(const MultiGraph& g) {
  Sweep s = fiedlerSweep(g);
  GraphExpansion out;
  out.phi = s.phi;
  out.witness = Cut{canonicalSide(s.side), s.boundary};
  out.heuristic = true;
  return out;
}

Cut spectralPartition(const MultiGraph& g) {
  if (g.n < 2) fail("EmptySide", "partition needs at least two vertices");
  if (!g.connected()) fail("Disconnected", "spectral partition needs a connected graph");
  Sweep s = fiedlerSweep(g);
  return Cut{canonicalSide(s.side), s.boundary};
}

NuclearNorm nuclearNorm(const MatrixXd& a) {
  MatrixXd work = a;
  if (work.rows() < work.cols()) {
    // pad with zero rows so the maximizer form applies
    MatrixXd padded = MatrixXd::Zero(work.cols(), work.cols());
    padded.topRows(work.rows()) = work;
    work = padded;
  }
  Eigen::JacobiSVD<MatrixXd> svd(work, Eigen::ComputeFullU | Eigen::ComputeFullV);
  NuclearNorm out;
  out.value = svd.singularValues().sum();
  const long cols = work.cols();
  // U_opt = sum_i v_i u_i^T over all cols singular directions
  out.maximizer = svd.matrixV() * svd.matrixU().leftCols(cols).transpose();
  return out;
}

CutDominance cutDominance(const MatrixXd& a, const MatrixXd& b) {
  const int n = static_cast<int>(a.rows());
  if (b.rows() != n || a.cols() != n || b.cols() != n)
    fail("BadMatrix", "dimension mismatch");
  if (n > kExhaustiveCap) fail("TooLarge", "cut dominance is exhaustive-only");
  MatrixXd diff = b - a;  // want 1^T diff 1 >= 0 for every subset
  std::vector<double> D(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) D[static_cast<size_t>(j) * n + i] = diff(i, j);
  CutDominance out;
  bool first = true;
  uint32_t worst = 0;
  scanSubsets(n, D.data(), nullptr, false, [&](uint32_t mask, double q, double) {
    if (first || q < out.margin) {
      out.margin = q;
      worst = mask;
      first = false;
    }
  });
  out.holds = out.margin >= -1e-8;
  if (!out.holds) out.witness = VertexSet::fromMask(n, worst);
  return out;
}

}  // namespace thintree
