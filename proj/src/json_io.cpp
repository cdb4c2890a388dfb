#include "haarq/json_io.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace haarq {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

void check_schema(const json& j, const char* kind) {
  require(j.is_object(), std::string(kind) + ": expected a JSON object");
  if (j.contains("schema")) {
    require(j["schema"].is_number_integer() && j["schema"].get<int>() == 1,
            std::string(kind) + ": unsupported schema version");
  }
}

std::vector<std::uint8_t> bit_array(const json& j, const char* what) {
  require(j.is_array(), std::string(what) + " must be an array");
  std::vector<std::uint8_t> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    require(v.is_number_integer(), std::string(what) + " entries must be integers");
    const int b = v.get<int>();
    require(b == 0 || b == 1, std::string(what) + " entries must be 0 or 1");
    out.push_back(static_cast<std::uint8_t>(b));
  }
  return out;
}

}  // namespace

json instance_to_json(const HaarInstance& inst) {
  json b = json::array();
  for (auto v : inst.b) b.push_back(static_cast<int>(v));
  return json{{"schema", 1}, {"n", inst.n}, {"h", inst.h_star}, {"b", std::move(b)}};
}

HaarInstance instance_from_json(const json& j) {
  check_schema(j, "instance");
  require(j.contains("n") && j.contains("h") && j.contains("b"),
          "instance needs fields n, h, b");
  return make_instance(j["n"].get<int>(), j["h"].get<int>(), bit_array(j["b"], "b"));
}

json oracle_to_json(const Oracle& oracle) {
  std::string bits;
  const auto raw = oracle.bits_copy();
  bits.reserve(raw.size());
  for (auto b : raw) bits.push_back(b ? '1' : '0');
  return json{{"schema", 1}, {"n", oracle.n()}, {"bits", std::move(bits)}};
}

Oracle oracle_from_json(const json& j) {
  check_schema(j, "oracle");
  require(j.contains("n") && j.contains("bits"), "oracle needs fields n, bits");
  const int n = j["n"].get<int>();
  const std::string s = j["bits"].get<std::string>();
  std::vector<std::uint8_t> bits(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    require(s[i] == '0' || s[i] == '1', "bits must be a 0/1 string");
    bits[i] = static_cast<std::uint8_t>(s[i] - '0');
  }
  return Oracle::eager(n, std::move(bits));
}

json parity_to_json(const ParityInstance& inst) {
  return json{{"schema", 1}, {"n", inst.n}, {"k", inst.k}};
}

ParityInstance parity_from_json(const json& j) {
  check_schema(j, "parity");
  require(j.contains("n") && j.contains("k"), "parity needs fields n, k");
  return make_parity_instance(j["n"].get<int>(), j["k"].get<std::uint64_t>());
}

json tree_to_json(const EvaluatedTree& tree) {
  json leaves = json::array();
  for (auto v : tree.leaves()) leaves.push_back(static_cast<int>(v));
  return json{{"schema", 1}, {"depth", tree.depth}, {"leaves", std::move(leaves)}};
}

std::vector<std::uint8_t> tree_leaves_from_json(const json& j) {
  check_schema(j, "tree");
  require(j.contains("depth") && j.contains("leaves"), "tree needs fields depth, leaves");
  auto leaves = bit_array(j["leaves"], "leaves");
  const int depth = j["depth"].get<int>();
  require(depth >= 0 && leaves.size() == (std::size_t{1} << depth),
          "leaves length must equal 2^depth");
  return leaves;
}

json vector_to_json(const std::vector<double>& values) {
  require(!values.empty() && (values.size() & (values.size() - 1)) == 0,
          "vector length must be a power of two");
  return json{{"schema", 1},
              {"n", std::bit_width(values.size()) - 1},
              {"values", values}};
}

std::vector<double> vector_from_json(const json& j) {
  check_schema(j, "vector");
  require(j.contains("values") && j["values"].is_array(), "vector needs a values array");
  std::vector<double> out;
  for (const auto& v : j["values"]) {
    require(v.is_number(), "values must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

json truth_table_to_json(const PartialBoolFn& f) {
  json entries = json::array();
  for (std::size_t i = 0; i < f.domain.size(); ++i) {
    std::string x(f.m, '0');
    for (int pos = 1; pos <= f.m; ++pos) {
      x[f.m - pos] = input_bit(f.domain[i], pos) ? '1' : '0';
    }
    entries.push_back(json{{"x", std::move(x)}, {"f", static_cast<int>(f.outputs[i])}});
  }
  return json{{"schema", 1}, {"m", f.m}, {"entries", std::move(entries)}};
}

PartialBoolFn truth_table_from_json(const json& j) {
  check_schema(j, "truth table");
  require(j.contains("m") && j.contains("entries"), "truth table needs fields m, entries");
  PartialBoolFn f;
  f.m = j["m"].get<int>();
  require(f.m >= 1 && f.m <= 16, "m must be in 1..16");
  for (const auto& e : j["entries"]) {
    require(e.contains("x") && e.contains("f"), "entries need fields x, f");
    const std::string x = e["x"].get<std::string>();
    require(static_cast<int>(x.size()) == f.m, "entry x must have m characters");
    std::uint64_t packed = 0;
    for (int pos = 1; pos <= f.m; ++pos) {
      const char ch = x[f.m - pos];
      require(ch == '0' || ch == '1', "entry x must be a binary string");
      packed |= static_cast<std::uint64_t>(ch - '0') << (pos - 1);
    }
    const int out = e["f"].get<int>();
    require(out == 0 || out == 1, "entry f must be 0 or 1");
    require(f.index_of(packed) < 0, "duplicate domain entry");
    f.domain.push_back(packed);
    f.outputs.push_back(static_cast<std::uint8_t>(out));
  }
  require(!f.domain.empty(), "truth table must have at least one entry");
  return f;
}

json distribution_to_json(const MeasurementDistribution& dist, double min_p) {
  json out = json::array();
  for (std::size_t pos = 0; pos < dist.p.size(); ++pos) {
    if (dist.p[pos] < min_p) continue;
    if (dist.basis == Basis::haar) {
      const HaarIndex idx = unlayout(dist.n, pos);
      out.push_back(json{{"h", idx.h}, {"l", idx.l}, {"p", dist.p[pos]}});
    } else {
      out.push_back(json{{"k", pos}, {"p", dist.p[pos]}});
    }
  }
  return out;
}

json solve_report_to_json(const SolveReport& report) {
  return json{{"schema", 1},
              {"value", report.value},
              {"residual", report.residual},
              {"converged", report.converged},
              {"iterations", report.iterations},
              {"starts", report.starts},
              {"seed", report.seed}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::vector<double> load_vector_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    double v;
    if (!(ss >> v)) throw std::invalid_argument(path + ": bad CSV value '" + line + "'");
    out.push_back(v);
  }
  return out;
}

void save_vector_csv(const std::string& path, const std::vector<double>& values) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out.precision(17);
  for (double v : values) out << v << '\n';
}

}  // namespace haarq
