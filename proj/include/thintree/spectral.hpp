#ifndef THINTREE_SPECTRAL_HPP
#define THINTREE_SPECTRAL_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "thintree/cuts.hpp"
#include "thintree/graph.hpp"

namespace thintree {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd laplacian(const MultiGraph& g);
VectorXd incidenceVector(int n, int u, int v);  // 1_u - 1_v

// Laplacian, eigendecomposition and pseudoinverse cache for one graph.
// Immutable after construction; all queries are read-only.
class SpectralView {
 public:
  explicit SpectralView(const MultiGraph& g);

  const MultiGraph& graph() const { return g_; }
  const MatrixXd& lap() const { return L_; }
  const VectorXd& eigenvalues() const { return vals_; }
  const MatrixXd& eigenvectors() const { return vecs_; }
  int pinvRank() const { return pinvRank_; }
  int components() const { return components_; }

  MatrixXd pinv() const;
  MatrixXd pinvSqrt() const;
  double reff(int u, int v) const;
  double reffEdge(int e) const;
  std::vector<double> reffAll() const;

 private:
  MultiGraph g_;
  MatrixXd L_;
  VectorXd vals_;
  MatrixXd vecs_;
  int pinvRank_;
  int components_;
};

// Symmetric matrix with a certified spectrum; construction checks symmetry
// and the minimum-eigenvalue floor.
class PsdMatrix {
 public:
  explicit PsdMatrix(MatrixXd m, double floor = -1e-9);

  const MatrixXd& mat() const { return m_; }
  double minEigenvalue() const { return minEig_; }
  int n() const { return static_cast<int>(m_.rows()); }

  // Xi^T M^dagger Xi with a range-membership check on the incidence vector.
  double reff(int u, int v) const;

 private:
  MatrixXd m_;
  VectorXd vals_;
  MatrixXd vecs_;
  double minEig_;
};

double effectiveResistance(const SpectralView& view, int u, int v);
double effectiveResistance(const PsdMatrix& m, int u, int v);

// Largest eigenvalue of L_G^{+/2} L_T L_G^{+/2}.
double spectralThinness(const MultiGraph& g, const std::vector<int>& edgeSubset);

// Fiedler-vector sweep minimizing max{phi(S), phi(Sbar)} over prefixes.
Cut spectralPartition(const MultiGraph& g);

struct NuclearNorm {
  double value = 0;
  MatrixXd maximizer;  // semiorthogonal U with trace(U A) = value
};
NuclearNorm nuclearNorm(const MatrixXd& a);

struct CutDominance {
  bool holds = true;
  std::optional<VertexSet> witness;  // most violated subset (literal side)
  double margin = 0;                 // min over subsets of 1^T(B-A)1
};
// Exhaustive check of A <=_box B over all proper nonempty subsets (both
// orientations; the quadratic form of a general symmetric matrix is not
// complement-symmetric).
CutDominance cutDominance(const MatrixXd& a, const MatrixXd& b);

}  // namespace thintree

#endif
