#include "thintree/balls.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/SVD>

namespace thintree {

namespace {

double pointDist(const Eigen::MatrixXd& pts, int i, int j, BallMetric metric) {
  Eigen::VectorXd d = pts.col(i) - pts.col(j);
  if (metric == BallMetric::L1) return d.cwiseAbs().sum();
  return d.squaredNorm();
}

// disjointness spacing: centers further apart than 2r (L1) / 4r (L2sq)
double spacing(double r, BallMetric metric) {
  return metric == BallMetric::L1 ? 2.0 * r : 4.0 * r;
}

int greedyCount(const Eigen::MatrixXd& pts, const std::vector<int>& scan, double r,
                std::vector<int>* picked) {
  std::vector<int> sel;
  for (int p : scan) {
    bool ok = true;
    for (int q : sel) {
      if (pointDist(pts, p, q, BallMetric::L2sq) < spacing(r, BallMetric::L2sq)) {
        ok = false;
        break;
      }
    }
    if (ok) sel.push_back(p);
  }
  if (picked) *picked = sel;
  return static_cast<int>(sel.size());
}

}  // namespace

bool BallFamily::pairwiseDisjoint() const {
  for (int i = 0; i < count(); ++i)
    for (int j = i + 1; j < count(); ++j)
      if (pointDist(centers, i, j, metric) < spacing(radius, metric)) return false;
  return true;
}

GreedyBallsResult greedyBalls(const Eigen::MatrixXd& embedding,
                              const std::vector<std::pair<int, int>>& edges,
                              double epsilon) {
  if (epsilon <= 0 || epsilon >= 0.5) fail("BadK", "epsilon must lie in (0, 1/2)");
  if (edges.empty()) fail("EmptySide", "edge set must be nonempty");
  const int f = static_cast<int>(edges.size());

  // restrict points to the first |F| coordinates (rows aligned to edge order)
  Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(f, embedding.cols());
  int rows = std::min<int>(f, static_cast<int>(embedding.rows()));
  pts.topRows(rows) = embedding.topRows(rows);

  Eigen::MatrixXd ym(f, f);  // column per edge: Y_u - Y_v restricted to F rows
  for (int e = 0; e < f; ++e) {
    auto [u, v] = edges[e];
    if (u < 0 || v < 0 || u >= pts.cols() || v >= pts.cols())
      fail("BadEdge", "edge endpoint outside the embedding");
    ym.col(e) = pts.col(u) - pts.col(v);
  }
  double traceMean = ym.trace() / f;
  double normMean = ym.squaredNorm() / f;
  GreedyBallsResult out;
  out.upsilon = traceMean * traceMean;
  if (normMean <= 0) fail("DegenerateEmbedding", "all embedded points coincide");
  out.alpha = out.upsilon / normMean;
  out.c1 = std::pow(192.0 / epsilon + 64.0 / (epsilon * epsilon), 1.0 + epsilon);
  out.targetB = std::max(1, static_cast<int>(std::ceil(out.alpha * f / out.c1)));
  out.lemmaBound = std::pow(out.alpha, epsilon) * out.upsilon * f / out.c1;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ym);
  out.sigma.assign(svd.singularValues().data(),
                   svd.singularValues().data() + svd.singularValues().size());

  // scan order: endpoints in edge-id order, u before v
  std::vector<int> scan;
  scan.reserve(2 * edges.size());
  for (auto [u, v] : edges) {
    scan.push_back(u);
    scan.push_back(v);
  }

  // smallest positive pairwise squared distance seeds the doubling search
  double minPos = -1;
  for (size_t i = 0; i < scan.size(); ++i)
    for (size_t j = i + 1; j < scan.size(); ++j) {
      double d = pointDist(pts, scan[i], scan[j], BallMetric::L2sq);
      if (d > 0 && (minPos < 0 || d < minPos)) minPos = d;
    }
  if (minPos < 0) {
    // single distinct point: one ball of nominal radius
    std::vector<int> sel;
    greedyCount(pts, scan, 1.0, &sel);
    out.b = static_cast<int>(sel.size());
    out.r = 1.0;
    out.balls.metric = BallMetric::L2sq;
    out.balls.radius = out.r;
    out.balls.centers = Eigen::MatrixXd(f, sel.size());
    for (size_t i = 0; i < sel.size(); ++i) out.balls.centers.col(i) = pts.col(sel[i]);
    return out;
  }

  double lo = minPos / 8.0;
  while (greedyCount(pts, scan, lo, nullptr) <= out.targetB && lo > 1e-300) lo /= 2.0;
  double hi = lo;
  while (greedyCount(pts, scan, hi, nullptr) > out.targetB) hi *= 2.0;
  // 30-step bisection onto the infimum radius reaching the target count
  for (int it = 0; it < 30; ++it) {
    double mid = 0.5 * (lo + hi);
    if (greedyCount(pts, scan, mid, nullptr) > out.targetB)
      lo = mid;
    else
      hi = mid;
    if ((hi - lo) <= 1e-9 * hi) break;
  }

  std::vector<int> sel;
  int count = greedyCount(pts, scan, lo, &sel);
  out.b = count;
  out.r = lo;
  out.balls.metric = BallMetric::L2sq;
  out.balls.radius = lo;
  out.balls.centers = Eigen::MatrixXd(f, sel.size());
  for (size_t i = 0; i < sel.size(); ++i) out.balls.centers.col(i) = pts.col(sel[i]);
  return out;
}

HomogeneousSubset homogeneousDominatingSubset(
    const std::vector<std::pair<double, double>>& values, double alpha) {
  if (values.empty()) fail("EmptySide", "value list must be nonempty");
  if (alpha <= 0 || alpha >= 1) fail("NotBad", "alpha must lie in (0, 1)");
  const int n = static_cast<int>(values.size());
  double sumA = 0, sumB2 = 0;
  for (auto [a, b] : values) {
    if (a > b + 1e-12 * std::max(1.0, std::abs(b)))
      fail("BadPair", "a_e must not exceed b_e");
    sumA += a;
    sumB2 += b * b;
  }
  double mu = sumA / n;
  if (!(mu > 0)) fail("NotBad", "mean projection must be positive");
  if (mu * mu < alpha * (sumB2 / n) - 1e-12)
    fail("NotBad", "node fails the alpha-bad condition");

  const double c = std::sqrt(2.0);
  double q = 5.0 + 2.0 * std::log2(1.0 / alpha);  // c^q = c^5 / alpha

  // level 1: buckets of a_e / mu, scan -5 <= i < q for the best P * a_min
  auto bucketOf = [&](double ratio) -> int {
    return static_cast<int>(std::floor(std::log(ratio) / std::log(c)));
  };
  std::map<int, std::vector<int>> levels;
  for (int e = 0; e < n; ++e) {
    double a = values[e].first;
    if (a <= 0) continue;  // nonpositive projections live below every bucket
    levels[bucketOf(a / mu)].push_back(e);
  }
  int bestI = 0;
  double bestScore = -1;
  for (auto& [i, members] : levels) {
    if (i < -5 || static_cast<double>(i) >= q) continue;
    double amin = values[members[0]].first;
    for (int e : members) amin = std::min(amin, values[e].first);
    double score = static_cast<double>(members.size()) / n * amin;
    if (score > bestScore) {
      bestScore = score;
      bestI = i;
    }
  }
  if (bestScore <= 0) fail("NotBad", "no projection bucket inside the scan range");
  const auto& lvl = levels[bestI];
  double aMin = values[lvl[0]].first;
  for (int e : lvl) aMin = std::min(aMin, values[e].first);

  // level 2: buckets of b_e / a_min, keep the most populated j < q
  std::map<int, std::vector<int>> sub;
  for (int e : lvl) {
    double ratio = values[e].second / aMin;
    int j = std::max(0, bucketOf(ratio));
    sub[j].push_back(e);
  }
  int bestJ = -1;
  size_t bestCount = 0;
  for (auto& [j, members] : sub) {
    if (static_cast<double>(j) >= q) continue;
    if (members.size() > bestCount) {
      bestCount = members.size();
      bestJ = j;
    }
  }
  if (bestJ < 0) fail("NotBad", "no length bucket inside the scan range");

  HomogeneousSubset out;
  out.indices = sub[bestJ];
  out.q = q;
  out.c2 = 32.0 * q * q * (5.0 + q) * (5.0 + q);
  double sel = 0;
  for (int e : out.indices) sel += values[e].first;
  out.gamma = (sel * sel) / (sumA * sumA);
  return out;
}

}  // namespace thintree
