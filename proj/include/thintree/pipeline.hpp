#ifndef THINTREE_PIPELINE_HPP
#define THINTREE_PIPELINE_HPP

#include <map>
#include <vector>

#include "thintree/cp.hpp"

namespace thintree {

struct IterationRecord {
  Hierarchy hierarchy;            // T_i (before this iteration's refinement)
  std::vector<int> w;             // W_i
  std::vector<int> t;             // T_i
  double epsilon = 0;             // solved Tree-CP objective
  double tau = 0;                 // threshold 16 * epsilon
  std::vector<int> goodEdges;     // F_i (edge ids over E)
  std::map<int, double> nodeAverage;              // solved avg Reff per t in T_i
  std::map<int, std::pair<long long, long long>> coverage;  // t -> (|F_i cap O(t)|, |O(t)|)
  std::map<int, int> partsPerNode;                // l(t) for t in W_i
  std::map<int, double> internalExpansion;        // phi(G{t}) for t in W_i
  MatrixXd d;                     // D_i
};

struct PipelineTrace {
  int k = 0;
  std::vector<IterationRecord> iterations;
  MatrixXd dAvg;
  std::vector<int> goodEdges;     // F = union of F_i
  long long finalConnectivity = 0;
  double maxReffOverF = 0;        // max over F of Reff_{D_avg}
  bool nonTermination = false;    // maxIters hit with W nonempty
};

// Iterated Tree-CP over adaptively refined hierarchies with Markov-threshold
// good-edge selection (tau_i = 16 eps_i). maxIters <= 0 selects the default
// ceil(log2 k) + 2.
PipelineTrace extractGoodEdges(const MultiGraph& g, const Hierarchy& lch0, int k,
                               int maxIters = 0);

struct CertifyReport {
  bool ok = true;
  std::vector<std::string> failures;
  double dAvgMinEig = 0;
  bool cutDominanceHolds = true;   // exhaustive for n <= 20
  double cutDominanceMargin = 0;
  long long finalConnectivity = 0;
  double maxReffOverF = 0;
  std::map<int, long long> retiredNodeConnectivity;  // internal good-edge min cuts
};

// Recomputes every trace quantity from scratch; throws CertificateMismatch
// when a recomputation disagrees beyond 1e-6.
CertifyReport certifyPipeline(const MultiGraph& g, const PipelineTrace& trace);

}  // namespace thintree

#endif
