#ifndef THINTREE_BALLS_HPP
#define THINTREE_BALLS_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "thintree/util.hpp"

namespace thintree {

enum class BallMetric { L1, L2sq };

struct BallFamily {
  Eigen::MatrixXd centers;  // one column per ball
  double radius = 0;
  BallMetric metric = BallMetric::L2sq;

  int count() const { return static_cast<int>(centers.cols()); }
  bool pairwiseDisjoint() const;
};

struct GreedyBallsResult {
  BallFamily balls;
  int b = 0;        // balls found at the located radius
  double r = 0;     // located radius (infimum where the count drops to target)
  int targetB = 0;  // ceil(alpha |F| / C1(eps))
  double alpha = 0;    // reverse-Cauchy-Schwarz ratio of the restricted matrix
  double upsilon = 0;  // (E Y_{e,e})^2
  double c1 = 0;       // C1(eps) = (192/eps + 64/eps^2)^{1+eps}
  double lemmaBound = 0;  // alpha^eps * upsilon * |F| / C1(eps)
  std::vector<double> sigma;  // singular values of Y restricted to F, descending
};

// Scan-order greedy over the endpoints of F; coordinates are restricted to
// the first |F| dimensions (rows aligned to the listed edge order) so the
// diagonal entries Y_{e,e} are defined.
GreedyBallsResult greedyBalls(const Eigen::MatrixXd& embedding,  // d x nPoints
                              const std::vector<std::pair<int, int>>& edges,
                              double epsilon);

struct HomogeneousSubset {
  std::vector<int> indices;  // positions into the input pair list
  double gamma = 0;          // achieved dominating factor
  double c2 = 0;             // C2(alpha) = 32 q^2 (5+q)^2
  double q = 0;              // 5 + 2 log2(1/alpha)
};

// Two-level sqrt(2)-dyadic bucketing of (a_e, b_e) pairs; requires
// a_e <= b_e and the alpha-bad condition (E a)^2 >= alpha E b^2.
HomogeneousSubset homogeneousDominatingSubset(
    const std::vector<std::pair<double, double>>& values, double alpha);

}  // namespace thintree

#endif
