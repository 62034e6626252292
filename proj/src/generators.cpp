#include "thintree/generators.hpp"

#include <algorithm>
#include <set>

#include "thintree/util.hpp"

namespace thintree {

MultiGraph hypercube(int d, int mult) {
  if (d < 1 || d > 12) fail("TooLarge", "hypercube dimension must be in [1, 12]");
  if (mult < 1) fail("BadK", "multiplicity must be >= 1");
  int n = 1 << d;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(d) * (n / 2) * mult);
  for (int dim = 0; dim < d; ++dim) {
    for (int v = 0; v < n; ++v) {
      if (v & (1 << dim)) continue;
      for (int c = 0; c < mult; ++c) edges.emplace_back(v, v | (1 << dim));
    }
  }
  return MultiGraph(n, std::move(edges));
}

Ladder ladder(int n, int k, bool withShortcuts) {
  if (n < 1 || k < 1) fail("BadK", "ladder needs n, k >= 1");
  if (n % k != 0) fail("Indivisible", "k must divide n");
  auto u = [&](int i) { return i - 1; };         // i in 1..n
  auto v = [&](int i) { return n + i - 1; };     // i in 1..n
  std::vector<std::pair<int, int>> edges;
  // rails
  for (int i = 1; i < n; ++i)
    for (int c = 0; c < k; ++c) edges.emplace_back(u(i), u(i + 1));
  for (int i = 1; i < n; ++i)
    for (int c = 0; c < k; ++c) edges.emplace_back(v(i), v(i + 1));
  // vertical positions 1, n/k, 2n/k, ..., n
  std::vector<int> pos{1};
  for (int j = 1; j <= k; ++j) {
    int p = j * (n / k);
    if (p != pos.back()) pos.push_back(p);
  }
  Ladder out;
  for (int p : pos) {
    out.verticalEdges.push_back(static_cast<int>(edges.size()));
    edges.emplace_back(u(p), v(p));
  }
  if (withShortcuts) {
    for (size_t j = 0; j + 1 < pos.size(); ++j) {
      for (int c = 0; c < k; ++c) {
        out.shortcutEdges.push_back(static_cast<int>(edges.size()));
        edges.emplace_back(u(pos[j]), u(pos[j + 1]));
      }
      for (int c = 0; c < k; ++c) {
        out.shortcutEdges.push_back(static_cast<int>(edges.size()));
        edges.emplace_back(v(pos[j]), v(pos[j + 1]));
      }
    }
  }
  out.graph = MultiGraph(2 * n, std::move(edges));
  return out;
}

MultiGraph dyadic(int h, int k) {
  if (h < 1) fail("BadK", "dyadic needs h >= 1");
  if (h > 14) fail("TooLarge", "dyadic height capped at 14");
  if (k < 1) fail("BadK", "dyadic needs k >= 1");
  int n = (1 << h) + 1;
  std::vector<std::pair<int, int>> edges;
  for (int p = 0; p < (1 << h); ++p)
    for (int c = 0; c < k; ++c) edges.emplace_back(p, p + 1);
  for (int i = 1; i <= h; ++i)
    for (int j = 0; j < (1 << (h - i)); ++j)
      edges.emplace_back(j << i, (j + 1) << i);
  return MultiGraph(n, std::move(edges));
}

int dyadicShortEdgeId(int h, int k, int pos, int copy) {
  if (pos < 0 || pos >= (1 << h) || copy < 0 || copy >= k) fail("BadEdge", "dyadic short edge out of range");
  return pos * k + copy;
}

int dyadicLongEdgeId(int h, int k, int level, int j) {
  if (level < 1 || level > h || j < 0 || j >= (1 << (h - level)))
    fail("BadEdge", "dyadic long edge out of range");
  int ofs = k << h;
  for (int i = 1; i < level; ++i) ofs += 1 << (h - i);
  return ofs + j;
}

namespace {

// simple connected k-regular graph on m vertices via configuration model
std::vector<std::pair<int, int>> regularBase(int m, int k, uint64_t seed) {
  if (static_cast<long long>(m) * k % 2 != 0) fail("InfeasibleDegree", "m*k must be even");
  if (k >= m) fail("InfeasibleDegree", "k-regular simple graph needs k < m");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Rng rng(seed * 0x100000001b3ULL + static_cast<uint64_t>(attempt));
    std::vector<int> stubs;
    stubs.reserve(static_cast<size_t>(m) * k);
    for (int v = 0; v < m; ++v)
      for (int c = 0; c < k; ++c) stubs.push_back(v);
    for (size_t i = stubs.size(); i > 1; --i)
      std::swap(stubs[i - 1], stubs[rng.below(i)]);
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> seen;
    bool ok = true;
    for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int a = stubs[i], b = stubs[i + 1];
      if (a == b) { ok = false; break; }
      auto key = std::minmax(a, b);
      if (!seen.insert({key.first, key.second}).second) { ok = false; break; }
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    if (!ok) continue;
    std::sort(edges.begin(), edges.end());
    MultiGraph test(m, edges);
    if (!test.connected()) continue;
    return edges;
  }
  fail("InfeasibleDegree", "configuration model failed after 1000 attempts");
}

}  // namespace

MultiGraph cycleExpander(int m, int k, uint64_t seed) {
  if (m < 3) fail("InfeasibleDegree", "cycle length must be >= 3");
  if (k < 1) fail("InfeasibleDegree", "k must be >= 1");
  auto base = regularBase(m, k, seed);
  int n = m * m;  // cycle b holds vertices b*m .. b*m+m-1
  std::vector<std::pair<int, int>> edges;
  for (int b = 0; b < m; ++b)
    for (int i = 0; i < m; ++i)
      for (int c = 0; c < k; ++c) edges.emplace_back(b * m + i, b * m + (i + 1) % m);
  // attach the j-th incident base edge of vertex b at cycle slot floor(j*m/k)
  std::vector<int> slotCount(m, 0);
  for (auto [a, b] : base) {
    int sa = static_cast<int>(static_cast<long long>(slotCount[a]++) * m / k);
    int sb = static_cast<int>(static_cast<long long>(slotCount[b]++) * m / k);
    edges.emplace_back(a * m + sa, b * m + sb);
  }
  return MultiGraph(n, std::move(edges));
}

std::vector<int> cycleExpanderExpanderEdges(int m, int k) {
  int cycleEdges = m * m * k;
  int baseEdges = m * k / 2;
  std::vector<int> out(baseEdges);
  for (int i = 0; i < baseEdges; ++i) out[i] = cycleEdges + i;
  return out;
}

MultiGraph amplify(const MultiGraph& g, int c) {
  if (c < 1) fail("BadK", "amplification factor must be >= 1");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edges.size() * static_cast<size_t>(c));
  for (auto e : g.edges)
    for (int i = 0; i < c; ++i) edges.push_back(e);
  return MultiGraph(g.n, std::move(edges));
}

}  // namespace thintree
