#include "thintree/graph.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace thintree {

MultiGraph::MultiGraph(int n_, std::vector<std::pair<int, int>> edges_)
    : n(n_), edges(std::move(edges_)) {
  if (n <= 0) fail("BadGraph", "vertex count must be positive");
  for (size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u == v) fail("BadGraph", "self-loop at edge " + std::to_string(i));
    if (u < 0 || v < 0 || u >= n || v >= n)
      fail("BadGraph", "vertex out of range at edge " + std::to_string(i));
  }
}

std::vector<int> MultiGraph::degrees() const {
  std::vector<int> d(n, 0);
  for (auto [u, v] : edges) {
    d[u]++;
    d[v]++;
  }
  return d;
}

std::vector<int> MultiGraph::componentOf() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> comp(n, -1);
  int c = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (comp[w] < 0) {
          comp[w] = c;
          stack.push_back(w);
        }
    }
    ++c;
  }
  return comp;
}

int MultiGraph::componentCount() const {
  auto comp = componentOf();
  int mx = 0;
  for (int c : comp) mx = std::max(mx, c + 1);
  return mx;
}

bool MultiGraph::connected() const { return componentCount() <= 1; }

std::string MultiGraph::toText() const {
  std::ostringstream os;
  os << n << ' ' << m() << '\n';
  for (auto [u, v] : edges) os << u << ' ' << v << '\n';
  return os.str();
}

MultiGraph MultiGraph::fromText(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineNo = 0;
  auto nextLine = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineNo;
      if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!nextLine()) fail("BadGraph", "empty graph file");
  std::istringstream hdr(line);
  int n = 0, m = 0;
  if (!(hdr >> n >> m)) fail("BadGraph", "bad header at line " + std::to_string(lineNo));
  if (n <= 0 || m < 0) fail("BadGraph", "bad header at line " + std::to_string(lineNo));
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (int i = 0; i < m; ++i) {
    if (!nextLine()) fail("BadGraph", "missing edge line " + std::to_string(i));
    std::istringstream el(line);
    int u, v;
    if (!(el >> u >> v)) fail("BadGraph", "bad edge at line " + std::to_string(lineNo));
    if (u == v) fail("BadGraph", "self-loop at line " + std::to_string(lineNo));
    if (u < 0 || v < 0 || u >= n || v >= n)
      fail("BadGraph", "vertex out of range at line " + std::to_string(lineNo));
    edges.emplace_back(u, v);
  }
  return MultiGraph(n, std::move(edges));
}

MultiGraph MultiGraph::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail("FileNotFound", path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return fromText(ss.str());
}

void MultiGraph::save(const std::string& path) const {
  std::ofstream f(path);
  if (!f) fail("FileError", "cannot write " + path);
  f << toText();
}

VertexSet canonicalSide(const VertexSet& s) {
  if (s.universe() > 0 && s.test(0)) return s.complement();
  return s;
}

}  // namespace thintree
