#include "surropt/problem_config.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <set>

#include <json.hpp>

#include "surropt/errors.hpp"
#include "surropt/model_io.hpp"
#include "surropt/test_functions.hpp"

namespace surropt {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& context) {
  if (!obj.is_object()) throw ParseError(context + ": expected a JSON object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ParseError(context + ": unknown field '" + item.key() + "'");
    }
  }
}

const json& require(const json& obj, const std::string& key,
                    const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(context + ": missing field '" + key + "'");
  return *it;
}

Vector vector_from_json(const json& arr, const std::string& context) {
  if (!arr.is_array()) throw ParseError(context + ": expected an array");
  Vector v(arr.size());
  Eigen::Index i = 0;
  for (const auto& entry : arr) {
    if (!entry.is_number()) throw ParseError(context + ": expected numbers");
    v[i++] = entry.get<double>();
  }
  return v;
}

std::vector<OutputBound> bounds_from_json(const json& arr) {
  if (!arr.is_array()) {
    throw ParseError("output_bounds: expected an array (null per free output)");
  }
  std::vector<OutputBound> bounds;
  for (std::size_t j = 0; j < arr.size(); ++j) {
    const std::string ctx = "output_bounds[" + std::to_string(j) + "]";
    OutputBound bound;
    if (!arr[j].is_null()) {
      if (!arr[j].is_array() || arr[j].size() != 2) {
        throw ParseError(ctx + ": expected [lo, hi] or null");
      }
      if (!arr[j][0].is_null()) bound.lo = arr[j][0].get<double>();
      if (!arr[j][1].is_null()) bound.hi = arr[j][1].get<double>();
      if (bound.lo && bound.hi && *bound.lo > *bound.hi) {
        throw ConfigError(ctx + ": lo > hi");
      }
    }
    bounds.push_back(bound);
  }
  return bounds;
}

Box box_from_json(const json& arr) {
  if (!arr.is_array() || arr.empty()) {
    throw ParseError("x_bounds: expected an array of [lo, hi] pairs");
  }
  const double inf = std::numeric_limits<double>::infinity();
  Box box;
  box.lo.resize(arr.size());
  box.hi.resize(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string ctx = "x_bounds[" + std::to_string(i) + "]";
    if (arr[i].is_null()) {
      box.lo[i] = -inf;
      box.hi[i] = inf;
      continue;
    }
    if (!arr[i].is_array() || arr[i].size() != 2) {
      throw ParseError(ctx + ": expected [lo, hi] or null");
    }
    box.lo[i] = arr[i][0].is_null() ? -inf : arr[i][0].get<double>();
    box.hi[i] = arr[i][1].is_null() ? inf : arr[i][1].get<double>();
    if (box.lo[i] > box.hi[i]) throw ConfigError(ctx + ": lo > hi");
  }
  return box;
}

SolverOptions solver_from_json(const json& obj) {
  reject_unknown_keys(obj,
                      {"eta", "tol", "delta", "max_outer_iter",
                       "backtrack_ratio", "max_backtracks"},
                      "solver");
  SolverOptions options;
  options.eta = obj.value("eta", options.eta);
  options.tol = obj.value("tol", options.tol);
  options.delta = obj.value("delta", options.delta);
  options.max_outer_iter = obj.value("max_outer_iter", options.max_outer_iter);
  options.backtrack_ratio = obj.value("backtrack_ratio", options.backtrack_ratio);
  options.max_backtracks = obj.value("max_backtracks", options.max_backtracks);
  options.validate();
  return options;
}

}  // namespace

ProblemConfig load_problem_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open problem config: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }

  reject_unknown_keys(doc,
                      {"surrogate_model_path", "objective", "output_bounds",
                       "x_bounds", "x0", "solver", "validation_function"},
                      "problem config");

  ProblemConfig config;
  config.surrogate =
      require(doc, "surrogate_model_path", "problem config").get<std::string>();

  const json& objective = require(doc, "objective", "problem config");
  reject_unknown_keys(objective, {"c", "d", "const"}, "objective");
  config.output_cost = vector_from_json(require(objective, "c", "objective"),
                                        "objective.c");
  if (objective.contains("d")) {
    config.input_cost = vector_from_json(objective["d"], "objective.d");
  }
  config.constant = objective.value("const", 0.0);

  if (doc.contains("output_bounds")) {
    config.output_bounds = bounds_from_json(doc["output_bounds"]);
  }
  if (doc.contains("x_bounds")) {
    config.x_bounds = box_from_json(doc["x_bounds"]);
  }
  config.x0 = vector_from_json(require(doc, "x0", "problem config"), "x0");
  if (doc.contains("solver")) {
    config.solver = solver_from_json(doc["solver"]);
  }
  if (doc.contains("validation_function")) {
    const std::string name = doc["validation_function"].get<std::string>();
    test_function(name);  // fail fast on unknown names
    config.validation_function = name;
  }
  return config;
}

SurrogatePtr resolve_surrogate(const std::string& ref,
                               const std::string& base_dir) {
  constexpr std::string_view analytic_prefix = "analytic:";
  if (ref.rfind(analytic_prefix, 0) == 0) {
    const std::string name = ref.substr(analytic_prefix.size());
    constexpr std::string_view identity_prefix = "identity:";
    if (name.rfind(identity_prefix, 0) == 0) {
      const int n = std::stoi(name.substr(identity_prefix.size()));
      if (n < 1) throw ConfigError("analytic:identity needs dimension >= 1");
      return std::make_shared<AnalyticAdapter>(AnalyticAdapter::identity(n));
    }
    return make_test_function_surrogate(test_function(name));
  }
  std::filesystem::path path(ref);
  if (path.is_relative() && !base_dir.empty()) {
    path = std::filesystem::path(base_dir) / path;
  }
  return load_model(path.string());
}

LinearCompositeProblem to_linear_composite(const ProblemConfig& config) {
  LinearCompositeProblem problem;
  problem.output_cost = config.output_cost;
  problem.input_cost = config.input_cost;
  problem.constant = config.constant;
  problem.output_bounds = config.output_bounds;
  problem.x_bounds = config.x_bounds;
  return problem;
}

}  // namespace surropt
