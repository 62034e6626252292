#ifndef THINTREE_CUTS_HPP
#define THINTREE_CUTS_HPP

#include <functional>
#include <optional>
#include <vector>

#include "thintree/graph.hpp"

namespace thintree {

inline constexpr int kExhaustiveCap = 20;

Cut cutValue(const MultiGraph& g, const VertexSet& side);

// Global minimum cut: value and an attaining witness (canonical side,
// lexicographically smallest among ties). Disconnected graphs return 0 with
// a disconnecting witness.
std::pair<long long, Cut> minEdgeConnectivity(const MultiGraph& g);

// Local edge connectivity of a pair = max-flow with unit parallel edges.
long long localEdgeConnectivity(const MultiGraph& g, int a, int b);

struct ContractResult {
  MultiGraph graph;
  std::vector<int> vertexMap;  // old id -> new id
};
ContractResult contract(const MultiGraph& g, const VertexSet& s);

struct InducedResult {
  MultiGraph graph;
  std::vector<int> vertexMap;   // old id -> new id (-1 outside S)
  std::vector<int> edgeBackMap; // new edge id -> old edge id
};
InducedResult inducedSubgraph(const MultiGraph& g, const VertexSet& s);

struct Expansion {
  double phiS = 0;
  double phiComplement = 0;
  double phiPair = 0;  // max of the two, the inner term of phi(G)
};
Expansion expansion(const MultiGraph& g, const VertexSet& s);

struct GraphExpansion {
  double phi = 0;
  Cut witness;
  bool heuristic = false;  // spectral-sweep bound when n > exhaustive cap
};
GraphExpansion graphExpansion(const MultiGraph& g);

struct Decomposition {
  std::vector<VertexSet> parts;
  int k = 1;
  long long crossEdges = 0;
  bool lemmaBoundHolds = true;  // sum of part boundaries <= 2(k-1)(l-1)
};
Decomposition naturalDecomposition(const MultiGraph& g, int k);

struct Thinness {
  double alpha = 0;
  Cut witness;
};
// max over cuts of |T(S,Sbar)| / |E(S,Sbar)|, exhaustive (n <= 20)
Thinness combinatorialThinness(const MultiGraph& g, const std::vector<int>& treeEdges);

// --- exhaustive subset scan engine -------------------------------------
//
// Gray-code walk over subsets with incremental quadratic forms
// q = 1_S^T M 1_S for up to two symmetric matrices (column-major dense,
// n x n). Visit receives the subset mask and current values.
// cutsOnly: subsets of V-{0} (one per complementary pair, S nonempty);
// otherwise all proper nonempty subsets (both orientations).
void scanSubsets(int n, const double* A, const double* B, bool cutsOnly,
                 const std::function<void(uint32_t, double, double)>& visit);

}  // namespace thintree

#endif
