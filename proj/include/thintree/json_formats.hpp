#ifndef THINTREE_JSON_FORMATS_HPP
#define THINTREE_JSON_FORMATS_HPP

#include <string>

#include <json.hpp>

#include "thintree/cp.hpp"
#include "thintree/pipeline.hpp"

namespace thintree {

using Json = nlohmann::ordered_json;

// matrix file: "rows cols" header then rows of decimal reals
void saveMatrix(const MatrixXd& m, const std::string& path);
MatrixXd loadMatrix(const std::string& path);

Json hierarchyToJson(const Hierarchy& h);
Hierarchy hierarchyFromJson(const Json& j);
void saveHierarchy(const Hierarchy& h, const std::string& path);
Hierarchy loadHierarchy(const std::string& path);

Json witnessToJson(const DualWitness& w);
DualWitness witnessFromJson(const Json& j, int n);
DualWitness loadWitness(const std::string& path, int n);

Json solutionToJson(const CpSolution& sol, const std::string& dFile);

Json traceToJson(const PipelineTrace& t);
PipelineTrace traceFromJson(const Json& j);

Json loadJsonFile(const std::string& path);
void saveJsonFile(const Json& j, const std::string& path);

std::string fileDigest(const std::string& path);

}  // namespace thintree

#endif
