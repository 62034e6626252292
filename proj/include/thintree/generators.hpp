#ifndef THINTREE_GENERATORS_HPP
#define THINTREE_GENERATORS_HPP

#include <vector>

#include "thintree/graph.hpp"

namespace thintree {

// Vertex numbering is fixed per family so edge ids are reproducible:
// hypercube = binary codes, ladder = u-rail then v-rail, dyadic = 0..2^h.

// d-dimensional hypercube, each edge repeated mult times. Edge order:
// dimension-major, vertex-minor, copies innermost.
MultiGraph hypercube(int d, int mult = 1);

struct Ladder {
  MultiGraph graph;
  std::vector<int> shortcutEdges;  // the red edges (k parallel per rail hop)
  std::vector<int> verticalEdges;  // the k+1 vertical edges
};
// Fig-3 family: rails u_1..u_n / v_1..v_n (0-based: u_i -> i-1,
// v_i -> n+i-1), k parallel edges per consecutive rail pair, k+1 vertical
// edges at positions {1, n/k, 2n/k, ..., n}; withShortcuts adds k parallel
// edges between endpoints of consecutive vertical positions on each rail.
Ladder ladder(int n, int k, bool withShortcuts);

// Dyadic path: vertices 0..2^h, k parallel edges between consecutive
// integers, one long edge {j*2^i, (j+1)*2^i} per 1 <= i <= h,
// 0 <= j < 2^{h-i}. Edge order: shorts position-major copy-minor, then
// longs level-major.
MultiGraph dyadic(int h, int k);
int dyadicShortEdgeId(int h, int k, int pos, int copy);
int dyadicLongEdgeId(int h, int k, int level, int j);

// Example-3.1 family: seeded k-regular base on m vertices (configuration
// model, resampled until simple and connected), each base vertex replaced
// by an m-cycle with k parallel copies of each cycle edge; base-edge
// endpoints attached equidistantly around the cycle.
MultiGraph cycleExpander(int m, int k, uint64_t seed);
std::vector<int> cycleExpanderExpanderEdges(int m, int k);  // ids of base edges

// every edge replicated c times (copies contiguous per original edge)
MultiGraph amplify(const MultiGraph& g, int c);

}  // namespace thintree

#endif
