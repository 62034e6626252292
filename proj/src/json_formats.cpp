#include "thintree/json_formats.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace thintree {

void saveMatrix(const MatrixXd& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) fail("FileError", "cannot write " + path);
  f << m.rows() << ' ' << m.cols() << '\n';
  f << std::setprecision(17);
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      if (j) f << ' ';
      f << m(i, j);
    }
    f << '\n';
  }
}

MatrixXd loadMatrix(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail("FileNotFound", path);
  long rows, cols;
  if (!(f >> rows >> cols) || rows <= 0 || cols <= 0)
    fail("BadMatrix", "bad matrix header in " + path);
  MatrixXd m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j)
      if (!(f >> m(i, j))) fail("BadMatrix", "truncated matrix in " + path);
  return m;
}

Json hierarchyToJson(const Hierarchy& h) {
  Json j;
  j["format"] = 1;
  j["nodes"] = h.nodes();
  j["parent"] = h.parent;
  Json lv = Json::object();
  for (int t = 0; t < h.nodes(); ++t)
    if (h.leafVertex[t] >= 0) lv[std::to_string(t)] = h.leafVertex[t];
  j["leafVertex"] = lv;
  j["marked"] = h.marked;
  return j;
}

Hierarchy hierarchyFromJson(const Json& j) {
  Hierarchy h;
  int nodes = j.at("nodes").get<int>();
  h.parent = j.at("parent").get<std::vector<int>>();
  if (static_cast<int>(h.parent.size()) != nodes)
    fail("InconsistentLeafMap", "parent array size differs from node count");
  h.leafVertex.assign(nodes, -1);
  for (auto& [key, val] : j.at("leafVertex").items()) {
    int t = std::stoi(key);
    if (t < 0 || t >= nodes) fail("InconsistentLeafMap", "leaf node id out of range");
    h.leafVertex[t] = val.get<int>();
  }
  if (j.contains("marked")) h.marked = j.at("marked").get<std::vector<int>>();
  return h;
}

void saveHierarchy(const Hierarchy& h, const std::string& path) {
  saveJsonFile(hierarchyToJson(h), path);
}

Hierarchy loadHierarchy(const std::string& path) {
  return hierarchyFromJson(loadJsonFile(path));
}

Json witnessToJson(const DualWitness& w) {
  Json j;
  j["format"] = 1;
  Json x = Json::array();
  for (long i = 0; i < w.X.rows(); ++i) {
    Json row = Json::array();
    for (long c = 0; c < w.X.cols(); ++c) row.push_back(w.X(i, c));
    x.push_back(row);
  }
  j["X"] = x;
  if (w.rowWeights.size() > 0) {
    Json rw = Json::array();
    for (long i = 0; i < w.rowWeights.size(); ++i) rw.push_back(w.rowWeights(i));
    j["rowWeights"] = rw;
  }
  Json u = Json::object();
  for (const auto& [e, row] : w.U) {
    Json r = Json::array();
    for (long i = 0; i < row.size(); ++i) r.push_back(row(i));
    u[std::to_string(e)] = r;
  }
  j["U"] = u;
  if (!w.lambdaNodes.empty()) {
    Json ln = Json::object();
    for (const auto& [t, l] : w.lambdaNodes) ln[std::to_string(t)] = l;
    j["lambdaNodes"] = ln;
  }
  if (!w.lambdaCuts.empty()) {
    Json lc = Json::array();
    for (const auto& [side, l] : w.lambdaCuts) {
      Json entry;
      entry["side"] = side.indices();
      entry["w"] = l;
      lc.push_back(entry);
    }
    j["lambdaCuts"] = lc;
  }
  return j;
}

DualWitness witnessFromJson(const Json& j, int n) {
  DualWitness w;
  const Json& x = j.at("X");
  if (x.is_object() && x.contains("file")) {
    w.X = loadMatrix(x.at("file").get<std::string>());
  } else {
    long rows = static_cast<long>(x.size());
    if (rows == 0) fail("BadWitness", "X must have at least one row");
    long cols = static_cast<long>(x.at(0).size());
    w.X = MatrixXd(rows, cols);
    for (long i = 0; i < rows; ++i)
      for (long c = 0; c < cols; ++c) w.X(i, c) = x.at(i).at(c).get<double>();
  }
  if (j.contains("rowWeights")) {
    auto rw = j.at("rowWeights").get<std::vector<double>>();
    w.rowWeights = Eigen::Map<VectorXd>(rw.data(), static_cast<long>(rw.size()));
  }
  if (j.contains("U")) {
    for (auto& [key, val] : j.at("U").items()) {
      auto row = val.get<std::vector<double>>();
      w.U[std::stoi(key)] = Eigen::Map<VectorXd>(row.data(), static_cast<long>(row.size()));
    }
  }
  if (j.contains("lambdaNodes")) {
    for (auto& [key, val] : j.at("lambdaNodes").items())
      w.lambdaNodes[std::stoi(key)] = val.get<double>();
  }
  if (j.contains("lambdaCuts")) {
    for (const auto& entry : j.at("lambdaCuts")) {
      auto idx = entry.at("side").get<std::vector<int>>();
      w.lambdaCuts.emplace_back(VertexSet::fromIndices(n, idx), entry.at("w").get<double>());
    }
  }
  return w;
}

DualWitness loadWitness(const std::string& path, int n) {
  return witnessFromJson(loadJsonFile(path), n);
}

Json solutionToJson(const CpSolution& sol, const std::string& dFile) {
  Json j;
  j["format"] = 1;
  j["objective"] = sol.objective;
  j["delta"] = sol.delta;
  j["dFile"] = dFile;
  Json cuts = Json::array();
  for (const auto& s : sol.activeCuts) cuts.push_back(s.indices());
  j["activeCuts"] = cuts;
  j["feasibilityMargin"] = sol.feasibilityMargin;
  j["heuristic"] = sol.heuristic;
  j["perConstraint"] = sol.perConstraint;
  j["trace"] = {{"outerRounds", sol.trace.outerRounds},
                {"cutsAdded", sol.trace.cutsAdded},
                {"groupsAdded", sol.trace.groupsAdded},
                {"newtonSteps", sol.trace.newtonSteps}};
  return j;
}

namespace {

Json matrixToJson(const MatrixXd& m) {
  Json rows = Json::array();
  for (long i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (long c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(row);
  }
  return rows;
}

MatrixXd matrixFromJson(const Json& j) {
  long rows = static_cast<long>(j.size());
  long cols = rows ? static_cast<long>(j.at(0).size()) : 0;
  MatrixXd m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long c = 0; c < cols; ++c) m(i, c) = j.at(i).at(c).get<double>();
  return m;
}

}  // namespace

Json traceToJson(const PipelineTrace& t) {
  Json j;
  j["format"] = 1;
  j["k"] = t.k;
  Json iters = Json::array();
  for (const auto& it : t.iterations) {
    Json ji;
    ji["hierarchy"] = hierarchyToJson(it.hierarchy);
    ji["W"] = it.w;
    ji["T"] = it.t;
    ji["epsilon"] = it.epsilon;
    ji["tau"] = it.tau;
    ji["goodEdges"] = it.goodEdges;
    Json na = Json::object();
    for (auto& [k2, v] : it.nodeAverage) na[std::to_string(k2)] = v;
    ji["nodeAverage"] = na;
    Json cov = Json::object();
    for (auto& [k2, v] : it.coverage)
      cov[std::to_string(k2)] = Json::array({v.first, v.second});
    ji["coverage"] = cov;
    Json parts = Json::object();
    for (auto& [k2, v] : it.partsPerNode) parts[std::to_string(k2)] = v;
    ji["partsPerNode"] = parts;
    Json exps = Json::object();
    for (auto& [k2, v] : it.internalExpansion) exps[std::to_string(k2)] = v;
    ji["internalExpansion"] = exps;
    ji["D"] = matrixToJson(it.d);
    iters.push_back(ji);
  }
  j["iterations"] = iters;
  j["dAvg"] = matrixToJson(t.dAvg);
  j["goodEdges"] = t.goodEdges;
  j["finalConnectivity"] = t.finalConnectivity;
  j["maxReffOverF"] = t.maxReffOverF;
  j["nonTermination"] = t.nonTermination;
  return j;
}

PipelineTrace traceFromJson(const Json& j) {
  PipelineTrace t;
  t.k = j.at("k").get<int>();
  for (const auto& ji : j.at("iterations")) {
    IterationRecord rec;
    rec.hierarchy = hierarchyFromJson(ji.at("hierarchy"));
    rec.w = ji.at("W").get<std::vector<int>>();
    rec.t = ji.at("T").get<std::vector<int>>();
    rec.epsilon = ji.at("epsilon").get<double>();
    rec.tau = ji.at("tau").get<double>();
    rec.goodEdges = ji.at("goodEdges").get<std::vector<int>>();
    for (auto& [key, val] : ji.at("nodeAverage").items())
      rec.nodeAverage[std::stoi(key)] = val.get<double>();
    for (auto& [key, val] : ji.at("coverage").items())
      rec.coverage[std::stoi(key)] = {val.at(0).get<long long>(), val.at(1).get<long long>()};
    for (auto& [key, val] : ji.at("partsPerNode").items())
      rec.partsPerNode[std::stoi(key)] = val.get<int>();
    for (auto& [key, val] : ji.at("internalExpansion").items())
      rec.internalExpansion[std::stoi(key)] = val.get<double>();
    rec.d = matrixFromJson(ji.at("D"));
    t.iterations.push_back(std::move(rec));
  }
  t.dAvg = matrixFromJson(j.at("dAvg"));
  t.goodEdges = j.at("goodEdges").get<std::vector<int>>();
  t.finalConnectivity = j.at("finalConnectivity").get<long long>();
  t.maxReffOverF = j.at("maxReffOverF").get<double>();
  t.nonTermination = j.at("nonTermination").get<bool>();
  return t;
}

Json loadJsonFile(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail("FileNotFound", path);
  Json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    fail("BadJson", path + ": " + e.what());
  }
  return j;
}

void saveJsonFile(const Json& j, const std::string& path) {
  std::ofstream f(path);
  if (!f) fail("FileError", "cannot write " + path);
  f << j.dump(2) << '\n';
}

std::string fileDigest(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail("FileNotFound", path);
  std::ostringstream ss;
  ss << f.rdbuf();
  std::string data = ss.str();
  uint64_t h = fnv1a(data.data(), data.size());
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << h;
  return hex.str();
}

}  // namespace thintree
