#ifndef THINTREE_LCH_HPP
#define THINTREE_LCH_HPP

#include <string>
#include <vector>

#include "thintree/cuts.hpp"
#include "thintree/graph.hpp"

namespace thintree {

// Rooted tree over the vertex set: every non-leaf node has >= 2 children,
// leaves biject to graph vertices. Only parents and the leaf map are stored;
// all per-node sets are derived.
struct Hierarchy {
  std::vector<int> parent;      // parent[node], root = -1
  std::vector<int> leafVertex;  // vertex id per node, -1 for internal nodes
  std::vector<int> marked;      // node ids (the construction's T set)

  int nodes() const { return static_cast<int>(parent.size()); }
  int root() const;
  std::vector<std::vector<int>> children() const;
  bool isLeaf(int t) const { return leafVertex[t] >= 0; }

  void checkStructure(int graphN) const;  // throws InconsistentLeafMap
};

Hierarchy makeStarHierarchy(const MultiGraph& g);

struct NodeViews {
  VertexSet vertexSet;        // V(t)
  std::vector<int> leaving;   // O(t): edge ids leaving V(t) inside G(t*)
  std::vector<int> leavingG;  // P(t): edge ids leaving V(t) in G
  bool leavingDefined = true; // false at the root (O undefined there)
  MultiGraph internal;        // G{t}: children of t contracted
  std::vector<int> internalEdgeIds;  // edge id in G per internal edge
  std::vector<int> internalVertexChild;  // internal vertex -> child node id
};
NodeViews hierarchyViews(const MultiGraph& g, const Hierarchy& h, int t);

struct LchViolation {
  int node;
  std::string condition;
  double measured;
};

struct LchReport {
  int k = 0;
  double lambda = 0;
  std::vector<int> validNodes;  // nodes where |O(t)| >= lambda |P(t)| holds
  std::vector<LchViolation> violations;
  bool valid() const { return violations.empty(); }
};

LchReport validateLCH(const MultiGraph& g, const Hierarchy& h, int k, double lambda,
                      const std::vector<int>& tset);

// Alg.-1 style binary hierarchy: repeatedly merge a <=5-neighbor contracted
// vertex with its heaviest neighbor. marked = the low-degree partner of each
// merge. Throws NoLowDegreeVertex when no such vertex exists.
Hierarchy planarLCH(const MultiGraph& g);

// Spectral-partitioning loop extracting a k/20-edge-connected, 1/4-dense
// induced subgraph with exhaustively checked expansion >= 1/k^2.
VertexSet expanderExtract(const MultiGraph& g, int k, double logBase = 2.0);

// Repeated expander extraction with contraction until one node remains;
// marked = all nodes.
Hierarchy generalLCH(const MultiGraph& g, int k, double logBase = 2.0);

}  // namespace thintree

#endif
