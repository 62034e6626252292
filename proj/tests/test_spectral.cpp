#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "thintree/cuts.hpp"
#include "thintree/generators.hpp"
#include "thintree/spectral.hpp"
#include "thintree/util.hpp"

using namespace thintree;

namespace {

MultiGraph randomConnected(Rng& rng, int n, int extraEdges) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(static_cast<int>(rng.below(v)), v);
  for (int i = 0; i < extraEdges; ++i) {
    int u = static_cast<int>(rng.below(n));
    int v = static_cast<int>(rng.below(n));
    if (u != v) edges.emplace_back(u, v);
  }
  return MultiGraph(n, std::move(edges));
}

MatrixXd randomPd(Rng& rng, int n) {
  MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.gauss();
  return a * a.transpose() + 0.1 * MatrixXd::Identity(n, n);
}

MatrixXd randomMat(Rng& rng, int r, int c) {
  MatrixXd a(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) a(i, j) = rng.gauss();
  return a;
}

VectorXd randomVecN(Rng& rng, int n) {
  VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = rng.gauss();
  return x;
}

}  // namespace

TEST_CASE("effective resistance examples") {
  MultiGraph db(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}});
  SpectralView vdb(db);
  CHECK(vdb.reff(0, 1) == doctest::Approx(0.2));  // five parallel resistors

  MultiGraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  SpectralView vc4(c4);
  CHECK(vc4.reff(0, 1) == doctest::Approx(0.75));  // 1 in series-parallel with 3

  MultiGraph q3 = hypercube(3);
  SpectralView vq3(q3);
  for (int e = 0; e < q3.m(); ++e)
    CHECK(vq3.reffEdge(e) == doctest::Approx(7.0 / 12));  // edge-transitive + sum rule
}

TEST_CASE("sum rule over seeded graphs") {
  Rng rng(5);
  for (int t = 0; t < 25; ++t) {
    int n = 3 + static_cast<int>(rng.below(12));
    MultiGraph g = randomConnected(rng, n, static_cast<int>(rng.below(15)));
    SpectralView view(g);
    double s = 0;
    for (double r : view.reffAll()) s += r;
    CHECK(s == doctest::Approx(n - 1).epsilon(1e-8));
  }
}

TEST_CASE("laplacian row sums and component multiplicity") {
  Rng rng(23);
  MultiGraph g = randomConnected(rng, 7, 5);
  SpectralView view(g);
  VectorXd rows = view.lap().rowwise().sum();
  CHECK(rows.cwiseAbs().maxCoeff() <= 1e-12);
  // disconnected graph: zero eigenvalue multiplicity = component count
  MultiGraph two(5, {{0, 1}, {1, 2}, {3, 4}});
  SpectralView v2(two);
  CHECK(v2.components() == 2);
  CHECK(v2.pinvRank() == 5 - 2);
  // L L+ L = L
  MatrixXd L = v2.lap();
  MatrixXd P = v2.pinv();
  CHECK((L * P * L - L).cwiseAbs().maxCoeff() <= 1e-8 * L.cwiseAbs().maxCoeff());
}

TEST_CASE("spectral thinness") {
  MultiGraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  SpectralView v(c4);
  // singleton subset: thinness equals the edge's effective resistance
  CHECK(spectralThinness(c4, {0}) == doctest::Approx(v.reffEdge(0)));
  // whole edge set: identity on the range
  CHECK(spectralThinness(c4, {0, 1, 2, 3}) == doctest::Approx(1.0));

  MultiGraph dc4(4, {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {2, 3}, {2, 3}, {3, 0}, {3, 0}});
  auto comb = combinatorialThinness(dc4, {0, 2, 4});
  double spec = spectralThinness(dc4, {0, 2, 4});
  CHECK(spec >= comb.alpha - 1e-9);
  CHECK(spec <= 1.0 + 1e-9);

  MultiGraph disc(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_WITH_AS(spectralThinness(disc, {0}), doctest::Contains("Disconnected"), Error);
}

TEST_CASE("spectral thinness dominates max edge Reff (Lemma 1.3)") {
  Rng rng(31);
  for (int t = 0; t < 15; ++t) {
    int n = 4 + static_cast<int>(rng.below(7));
    MultiGraph g = randomConnected(rng, n, n);
    SpectralView view(g);
    std::vector<int> tree;
    for (int e = 0; e < n - 1; ++e) tree.push_back(e);
    double mx = 0;
    for (int e : tree) mx = std::max(mx, view.reffEdge(e));
    CHECK(spectralThinness(g, tree) >= mx - 1e-9);
  }
}

TEST_CASE("spectral partition") {
  MultiGraph tt(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}});
  Cut c = spectralPartition(tt);
  auto exact = graphExpansion(tt);
  // separates the triangles: matches the exhaustive witness
  auto ci = c.side.indices();
  auto wi = exact.witness.side.indices();
  std::sort(ci.begin(), ci.end());
  std::sort(wi.begin(), wi.end());
  CHECK(ci == wi);

  MultiGraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  Cut ck = spectralPartition(k4);
  Expansion ex = expansion(k4, ck.side);
  CHECK(ex.phiPair <= 1.0 + 1e-12);
  CHECK(ex.phiPair >= graphExpansion(k4).phi - 1e-12);

  // C8: contiguous arc within the Cheeger factor of the optimum
  MultiGraph c8(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 0}});
  Cut cc = spectralPartition(c8);
  auto idx = cc.side.indices();
  std::sort(idx.begin(), idx.end());
  // contiguity on the cycle: the side induces a connected arc
  auto ind = inducedSubgraph(c8, cc.side);
  CHECK(ind.graph.connected());
  double phiExact = graphExpansion(c8).phi;
  Expansion swept = expansion(c8, cc.side);
  CHECK(swept.phiPair <= 2.0 * std::sqrt(2.0 * phiExact) + 1e-9);
}

TEST_CASE("nuclear norm") {
  CHECK(nuclearNorm(MatrixXd::Identity(3, 3)).value == doctest::Approx(3.0));
  MatrixXd d = MatrixXd::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 4;
  CHECK(nuclearNorm(d).value == doctest::Approx(7.0));

  Rng rng(41);
  for (int t = 0; t < 5; ++t) {
    MatrixXd a = randomMat(rng, 6, 4);
    auto nn = nuclearNorm(a);
    CHECK((nn.maximizer * a).trace() == doctest::Approx(nn.value).epsilon(1e-8));
    MatrixXd gram = nn.maximizer * nn.maximizer.transpose();
    CHECK((gram - MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-10);
    // no random semiorthogonal matrix beats the maximizer
    for (int s = 0; s < 100; ++s) {
      MatrixXd r = randomMat(rng, 6, 4);
      Eigen::HouseholderQR<MatrixXd> qr(r);
      MatrixXd q = qr.householderQ() * MatrixXd::Identity(6, 4);
      MatrixXd u = q.transpose();  // 4x6 with orthonormal rows
      CHECK((u * a).trace() <= nn.value + 1e-8);
    }
  }
}

TEST_CASE("cut dominance") {
  Rng rng(17);
  MultiGraph g = randomConnected(rng, 6, 6);
  MatrixXd L = laplacian(g);
  auto same = cutDominance(L, L);
  CHECK(same.holds);
  CHECK(same.margin == doctest::Approx(0.0));

  auto bad = cutDominance(2.0 * L, L);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness.has_value());
  VectorXd ind = VectorXd::Zero(g.n);
  for (int v : bad.witness->indices()) ind(v) = 1;
  CHECK(ind.dot((2.0 * L - L) * ind) == doctest::Approx(-bad.margin));

  // ladder shortcut edges: L_D <=_box L_G by construction (Fig. 3)
  Ladder lad = ladder(8, 4, true);
  MatrixXd LD = MatrixXd::Zero(lad.graph.n, lad.graph.n);
  for (int e : lad.shortcutEdges) {
    auto [u, v] = lad.graph.edges[e];
    LD(u, u) += 1;
    LD(v, v) += 1;
    LD(u, v) -= 1;
    LD(v, u) -= 1;
  }
  // plain ladder without the shortcut edges
  Ladder plain = ladder(8, 4, false);
  CHECK(cutDominance(LD, laplacian(plain.graph)).holds);
}

TEST_CASE("psd order implies cut dominance") {
  Rng rng(29);
  for (int t = 0; t < 10; ++t) {
    int n = 3 + static_cast<int>(rng.below(4));
    MatrixXd a = randomPd(rng, n);
    MatrixXd b = a + randomPd(rng, n);  // a <= b in the psd order
    CHECK(cutDominance(a, b).holds);
  }
}

TEST_CASE("schur complement equivalence") {
  Rng rng(53);
  for (int t = 0; t < 50; ++t) {
    int n = 2 + static_cast<int>(rng.below(6));
    MatrixXd a = randomPd(rng, n);
    VectorXd x = randomVecN(rng, n);
    double quad = x.dot(a.llt().solve(x));
    for (double c : {quad * 1.1 + 0.01, quad * 0.9 - 0.01}) {
      if (c < 0) continue;
      MatrixXd bordered(n + 1, n + 1);
      bordered(0, 0) = c;
      bordered.block(0, 1, 1, n) = x.transpose();
      bordered.block(1, 0, n, 1) = x;
      bordered.block(1, 1, n, n) = a;
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(bordered);
      bool psd = es.eigenvalues()(0) >= -1e-9;
      CHECK(psd == (quad <= c));
    }
  }
}

TEST_CASE("operator convexity of the inverse") {
  Rng rng(59);
  for (int t = 0; t < 50; ++t) {
    int n = 2 + static_cast<int>(rng.below(6));
    MatrixXd a = randomPd(rng, n);
    MatrixXd b = randomPd(rng, n);
    VectorXd x = randomVecN(rng, n);
    MatrixXd mid = 0.5 * a + 0.5 * b;
    double lhs = x.dot(mid.llt().solve(x));
    double rhs = 0.5 * x.dot(a.llt().solve(x)) + 0.5 * x.dot(b.llt().solve(x));
    CHECK(lhs <= rhs + 1e-10 * std::max(1.0, rhs));
  }
}

TEST_CASE("hoffman-wielandt inequality") {
  Rng rng(61);
  for (int t = 0; t < 50; ++t) {
    int n = 2 + static_cast<int>(rng.below(6));
    MatrixXd a = randomMat(rng, n, n);
    MatrixXd b = randomMat(rng, n, n);
    Eigen::JacobiSVD<MatrixXd> sa(a), sb(b);
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      double d = sa.singularValues()(i) - sb.singularValues()(i);
      sum += d * d;
    }
    CHECK(sum <= (a - b).squaredNorm() + 1e-8);
  }
}

TEST_CASE("psd matrix range checks") {
  // rank-one pair Laplacian: in-range pair works, out-of-range errors
  MatrixXd D = 2.0 * incidenceVector(3, 0, 1) * incidenceVector(3, 0, 1).transpose();
  PsdMatrix p(D);
  CHECK(p.reff(0, 1) == doctest::Approx(0.5));
  CHECK_THROWS_WITH_AS(p.reff(0, 2), doctest::Contains("OutOfRange"), Error);
  MatrixXd asym = MatrixXd::Zero(2, 2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(PsdMatrix{asym}, Error);
}
