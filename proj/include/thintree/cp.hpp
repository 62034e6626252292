#ifndef THINTREE_CP_HPP
#define THINTREE_CP_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thintree/lch.hpp"
#include "thintree/spectral.hpp"

namespace thintree {

enum class Program { Max, Average, Tree };
enum class Mode { Box, Psd };

struct CpInstance {
  const MultiGraph* g = nullptr;
  Program program = Program::Max;
  Mode mode = Mode::Box;
  const Hierarchy* hierarchy = nullptr;  // Tree only
  std::vector<int> tset;                 // Tree only
  // when declaredK > 0 the hierarchy is validated as a (k, lambda, T)-LCH
  int declaredK = 0;
  double declaredLambda = 0;
  double tolFeas = 1e-6;
  double tolObj = 1e-6;
  double pdFloorScale = 1e-6;  // delta = scale * trace(L_G)/n
  uint64_t seed = 0;
};

struct SolveTrace {
  int outerRounds = 0;
  int cutsAdded = 0;
  int groupsAdded = 0;
  int newtonSteps = 0;
};

struct CpSolution {
  MatrixXd D;
  double objective = 0;
  double delta = 0;
  std::vector<VertexSet> activeCuts;
  double feasibilityMargin = 0;  // min over subsets of 1^T (L_G - D) 1
  bool heuristic = false;        // separation was local-search only
  std::map<std::string, double> perConstraint;
  SolveTrace trace;
};

CpSolution solveCP(const CpInstance& inst);

struct Violation {
  VertexSet side;
  double amount = 0;  // 1^T (D - L_G) 1 at the returned subset
  bool heuristic = false;
};
// Most violated subset of D <=_box L_G, exhaustive for n <= 20, seeded
// single-bit-flip local search with 20 restarts beyond.
std::optional<Violation> separationOracle(const MultiGraph& g, const MatrixXd& d,
                                          double tolFeas, uint64_t seed = 0);

struct DualWitness {
  MatrixXd X;                 // h x n, entries in {0,1}
  VectorXd rowWeights;        // optional weighted cut metric (size 0 = unweighted)
  std::map<int, VectorXd> U;  // edge id -> row of the semiorthogonal matrix
  std::map<int, double> lambdaNodes;                  // Tree form
  std::vector<std::pair<VertexSet, double>> lambdaCuts;  // Average form
};

struct TreeDualValue {
  double ratio = 0;        // sum_t (1/|O(t)|) (sum_{e in O(t)} <U^e, X_e>)^2 / denom
  double denominator = 0;  // sum_e ||X_e||^2
  std::optional<double> nuclearRatio;  // ||XW||_*^2 / (Z . L_G) when lambda given
};
TreeDualValue evalDualTree(const MultiGraph& g, const Hierarchy& h,
                           const std::vector<int>& tset, const DualWitness& w);

struct AverageDualValue {
  double ratio = 0;
  double denominator = 0;
};
AverageDualValue evalDualAverage(const MultiGraph& g, const DualWitness& w);

// Theorem-5.2 witness for dyadic(h, k): threshold-cut embedding, Haar-type
// rows on the aligned long edges, uniform distribution on threshold cuts.
DualWitness dyadicWitness(int h, int k);

struct PairShortcut {
  PsdMatrix D;  // k * L_{a,b}
  long long k = 0;
};
PairShortcut singlePairShortcut(const MultiGraph& g, int a, int b);

}  // namespace thintree

#endif
