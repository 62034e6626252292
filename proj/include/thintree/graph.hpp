#ifndef THINTREE_GRAPH_HPP
#define THINTREE_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "thintree/util.hpp"

namespace thintree {

// Vertex subset as a packed bitset. Works as the canonical bitmask for
// n <= 64 and extends word-wise beyond; ordering below is lexicographic on
// the sorted index list (ties in cut scans break toward the smaller one).
class VertexSet {
 public:
  VertexSet() : n_(0) {}
  explicit VertexSet(int n) : n_(n), words_((n + 63) / 64, 0) {}
  static VertexSet fromIndices(int n, const std::vector<int>& idx) {
    VertexSet s(n);
    for (int v : idx) s.set(v);
    return s;
  }
  static VertexSet fromMask(int n, uint64_t mask) {
    VertexSet s(n);
    if (!s.words_.empty()) s.words_[0] = mask;
    return s;
  }

  int universe() const { return n_; }
  bool test(int v) const { return (words_[v >> 6] >> (v & 63)) & 1; }
  void set(int v) { words_[v >> 6] |= (1ULL << (v & 63)); }
  void reset(int v) { words_[v >> 6] &= ~(1ULL << (v & 63)); }
  void flip(int v) { words_[v >> 6] ^= (1ULL << (v & 63)); }

  int count() const {
    int c = 0;
    for (uint64_t w : words_) c += __builtin_popcountll(w);
    return c;
  }
  bool empty() const {
    for (uint64_t w : words_) if (w) return false;
    return true;
  }
  bool full() const { return count() == n_; }

  VertexSet complement() const {
    VertexSet s(n_);
    for (size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
    int rem = n_ & 63;
    if (rem && !s.words_.empty()) s.words_.back() &= (1ULL << rem) - 1;
    return s;
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
      if (test(v)) out.push_back(v);
    return out;
  }

  uint64_t mask64() const { return words_.empty() ? 0 : words_[0]; }

  bool operator==(const VertexSet& o) const { return n_ == o.n_ && words_ == o.words_; }

  // true if this precedes o in lexicographic order of sorted index lists
  bool setLexLess(const VertexSet& o) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      uint64_t diff = words_[i] ^ o.words_[i];
      if (!diff) continue;
      int b = __builtin_ctzll(diff);
      bool mineHasIt = (words_[i] >> b) & 1;
      // the set holding the first differing element is smaller, unless it is
      // a strict superset continuation of the other (prefix rule)
      if (mineHasIt) {
        return o.hasAnyAbove(static_cast<int>(i * 64 + b));
      }
      return !hasAnyAbove(static_cast<int>(i * 64 + b));
    }
    return false;
  }

 private:
  bool hasAnyAbove(int bit) const {
    size_t wi = bit >> 6;
    uint64_t w = words_[wi] & ~((bit & 63) == 63 ? ~0ULL : ((2ULL << (bit & 63)) - 1));
    if (w) return true;
    for (size_t i = wi + 1; i < words_.size(); ++i)
      if (words_[i]) return true;
    return false;
  }

  int n_;
  std::vector<uint64_t> words_;
};

// Unweighted multigraph with fixed edge orientations. Parallel edges are
// repeated entries; the entry index is the stable edge id.
struct MultiGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  MultiGraph() = default;
  MultiGraph(int n_, std::vector<std::pair<int, int>> edges_);

  int m() const { return static_cast<int>(edges.size()); }
  std::vector<int> degrees() const;
  bool connected() const;
  int componentCount() const;
  std::vector<int> componentOf() const;

  // graph text format: "n m" then one "u v" line per edge
  std::string toText() const;
  static MultiGraph fromText(const std::string& text);
  static MultiGraph load(const std::string& path);
  void save(const std::string& path) const;
};

// One side of a cut plus the number of crossing edges. Graph cuts are
// complement-symmetric, so the stored side is canonicalized to exclude
// vertex 0; quadratic-form witnesses from cut-dominance checks keep the
// literal subset instead (see spectral::cutDominance).
struct Cut {
  VertexSet side;
  long long value = 0;
};

VertexSet canonicalSide(const VertexSet& s);

}  // namespace thintree

#endif
