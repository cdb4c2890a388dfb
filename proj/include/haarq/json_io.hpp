#pragma once

#include <string>

#include <json.hpp>

#include "haarq/adversary.hpp"
#include "haarq/fault_tree.hpp"
#include "haarq/oracle.hpp"
#include "haarq/sim.hpp"

namespace haarq {

// File schemas (all carry "schema": 1):
//   instance     {"n":3,"h":2,"b":[1,0]}
//   oracle       {"n":3,"bits":"11000011"}     index 0 leftmost
//   parity       {"n":3,"k":6}
//   tree         {"depth":2,"leaves":[0,1,1,1]}
//   vector       {"n":3,"values":[...]}
//   truth table  {"m":2,"entries":[{"x":"00","f":1},...]}   "x" read as a
//                binary literal, rightmost char = bit 1
using json = nlohmann::json;

json instance_to_json(const HaarInstance& inst);
HaarInstance instance_from_json(const json& j);

json oracle_to_json(const Oracle& oracle);
Oracle oracle_from_json(const json& j);

json parity_to_json(const ParityInstance& inst);
ParityInstance parity_from_json(const json& j);

json tree_to_json(const EvaluatedTree& tree);
std::vector<std::uint8_t> tree_leaves_from_json(const json& j);

json vector_to_json(const std::vector<double>& values);
std::vector<double> vector_from_json(const json& j);

json truth_table_to_json(const PartialBoolFn& f);
PartialBoolFn truth_table_from_json(const json& j);

json distribution_to_json(const MeasurementDistribution& dist, double min_p = 1e-12);
json solve_report_to_json(const SolveReport& report);

// Throws std::invalid_argument on malformed content; the CLI maps that to
// its invalid-input exit code.
json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

std::vector<double> load_vector_csv(const std::string& path);
void save_vector_csv(const std::string& path, const std::vector<double>& values);

}  // namespace haarq
