#include "surropt/model_io.hpp"

#include <fstream>
#include <set>
#include <vector>

#include "surropt/decision_tree.hpp"
#include "surropt/ensemble.hpp"
#include "surropt/errors.hpp"
#include "surropt/mlp.hpp"
#include "surropt/svr.hpp"

namespace surropt {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& context) {
  if (!obj.is_object()) {
    throw ParseError(context + ": expected a JSON object");
  }
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ParseError(context + ": unknown field '" + item.key() + "'");
    }
  }
}

const json& require(const json& obj, const std::string& key,
                    const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(context + ": missing field '" + key + "'");
  }
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

Matrix matrix_from_json(const json& arr, const std::string& context) {
  if (!arr.is_array() || arr.empty()) {
    throw ParseError(context + ": expected a non-empty array of rows");
  }
  const auto rows = arr.size();
  const auto cols = arr.front().is_array() ? arr.front().size() : 0;
  if (cols == 0) throw ParseError(context + ": expected array-of-array rows");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!arr[r].is_array() || arr[r].size() != cols) {
      throw ParseError(context + ": ragged rows");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          arr[r][c].get<double>();
    }
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::shared_ptr<const SurrogateModel> mlp_from_json(const json& payload) {
  reject_unknown_keys(payload, {"activation", "layers"}, "mlp");
  const json& layers = require(payload, "layers", "mlp");
  if (!layers.is_array() || layers.empty()) {
    throw ParseError("mlp.layers: expected a non-empty array");
  }

  std::vector<int> dims;
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string ctx = "mlp.layers[" + std::to_string(l) + "]";
    const json& layer = layers[l];
    reject_unknown_keys(layer, {"rows", "cols", "weights", "bias"}, ctx);
    const int rows = require(layer, "rows", ctx).get<int>();
    const int cols = require(layer, "cols", ctx).get<int>();
    const json& w = require(layer, "weights", ctx);
    if (rows <= 0 || cols <= 0) throw ParseError(ctx + ": non-positive shape");
    if (!w.is_array() || w.size() != static_cast<std::size_t>(rows) * cols) {
      throw ParseError(ctx + ": weights must hold rows*cols values (row-major)");
    }
    Matrix wm(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        wm(r, c) = w[static_cast<std::size_t>(r) * cols + c].get<double>();
      }
    }
    if (dims.empty()) dims.push_back(cols);
    dims.push_back(rows);
    weights.push_back(std::move(wm));
    biases.push_back(vector_from_json(require(layer, "bias", ctx), ctx + ".bias"));
  }

  const json& act = require(payload, "activation", "mlp");
  std::vector<Activation> activations;
  const std::size_t hidden = layers.size() - 1;
  if (act.is_string()) {
    activations.assign(hidden, activation_from_string(act.get<std::string>()));
  } else if (act.is_array()) {
    if (act.size() != hidden) {
      throw ParseError("mlp.activation: expected one entry per hidden layer");
    }
    for (const auto& entry : act) {
      activations.push_back(activation_from_string(entry.get<std::string>()));
    }
  } else {
    throw ParseError("mlp.activation: expected a string or array of strings");
  }

  return std::make_shared<MlpModel>(std::move(dims), std::move(weights),
                                    std::move(biases), std::move(activations));
}

Kernel kernel_from_json(const json& doc) {
  reject_unknown_keys(doc, {"kind", "gamma", "degree", "coef"}, "svr.kernel");
  const std::string kind = require(doc, "kind", "svr.kernel").get<std::string>();
  return kernel_from_string(kind, doc.value("gamma", 1.0),
                            doc.value("degree", 2), doc.value("coef", 0.0));
}

std::shared_ptr<const SurrogateModel> svr_from_json(const json& payload) {
  reject_unknown_keys(payload, {"kernel", "support_vectors", "dual_coeffs", "bias"},
                      "svr");
  return std::make_shared<SvrModel>(
      matrix_from_json(require(payload, "support_vectors", "svr"),
                       "svr.support_vectors"),
      vector_from_json(require(payload, "dual_coeffs", "svr"), "svr.dual_coeffs"),
      require(payload, "bias", "svr").get<double>(),
      kernel_from_json(require(payload, "kernel", "svr")));
}

LeafModel leaf_from_json(const json& doc, const std::string& ctx) {
  const std::string kind = require(doc, "kind", ctx).get<std::string>();
  LeafModel leaf;
  if (kind == "affine") {
    reject_unknown_keys(doc, {"kind", "c", "c0"}, ctx);
  } else if (kind == "quadratic") {
    reject_unknown_keys(doc, {"kind", "q", "c", "c0"}, ctx);
    leaf.quad = matrix_from_json(require(doc, "q", ctx), ctx + ".q");
  } else {
    // Only C^2 leaf predictors are representable.
    throw ConfigError(ctx + ": unsupported leaf model kind '" + kind + "'");
  }
  leaf.lin = vector_from_json(require(doc, "c", ctx), ctx + ".c");
  leaf.constant = require(doc, "c0", ctx).get<double>();
  return leaf;
}

std::shared_ptr<const SurrogateModel> tree_from_json(const json& payload) {
  reject_unknown_keys(payload, {"root", "nodes"}, "decision_tree");
  const json& nodes_json = require(payload, "nodes", "decision_tree");
  if (!nodes_json.is_array()) {
    throw ParseError("decision_tree.nodes: expected an array");
  }
  std::vector<TreeNode> nodes;
  for (std::size_t i = 0; i < nodes_json.size(); ++i) {
    const std::string ctx = "decision_tree.nodes[" + std::to_string(i) + "]";
    const json& node = nodes_json[i];
    const std::string type = require(node, "type", ctx).get<std::string>();
    if (type == "branch") {
      reject_unknown_keys(node, {"type", "a", "b", "left", "right"}, ctx);
      BranchNode branch;
      branch.a = vector_from_json(require(node, "a", ctx), ctx + ".a");
      branch.b = require(node, "b", ctx).get<double>();
      branch.left = require(node, "left", ctx).get<int>();
      branch.right = require(node, "right", ctx).get<int>();
      nodes.emplace_back(std::move(branch));
    } else if (type == "leaf") {
      reject_unknown_keys(node, {"type", "model"}, ctx);
      nodes.emplace_back(leaf_from_json(require(node, "model", ctx), ctx + ".model"));
    } else {
      throw ParseError(ctx + ": unknown node type '" + type + "'");
    }
  }
  return std::make_shared<DecisionTreeModel>(
      std::move(nodes), require(payload, "root", "decision_tree").get<int>());
}

std::shared_ptr<const SurrogateModel> ensemble_from_json(const json& payload) {
  reject_unknown_keys(payload, {"weights", "members"}, "ensemble");
  const json& members_json = require(payload, "members", "ensemble");
  if (!members_json.is_array()) {
    throw ParseError("ensemble.members: expected an array");
  }
  std::vector<SurrogatePtr> members;
  for (const auto& member : members_json) {
    members.push_back(model_from_json(member));
  }
  return std::make_shared<EnsembleModel>(
      std::move(members),
      vector_from_json(require(payload, "weights", "ensemble"), "ensemble.weights"));
}

json leaf_to_json(const LeafModel& leaf) {
  json doc;
  doc["kind"] = leaf.quad ? "quadratic" : "affine";
  if (leaf.quad) doc["q"] = matrix_to_json(*leaf.quad);
  doc["c"] = vector_to_json(leaf.lin);
  doc["c0"] = leaf.constant;
  return doc;
}

}  // namespace

std::shared_ptr<const SurrogateModel> model_from_json(const json& doc) {
  const std::string kind = require(doc, "kind", "model").get<std::string>();
  reject_unknown_keys(doc, {"kind", "input_dim", "output_dim", kind}, "model");
  std::shared_ptr<const SurrogateModel> model;
  if (kind == "mlp") {
    model = mlp_from_json(require(doc, "mlp", "model"));
  } else if (kind == "svr") {
    model = svr_from_json(require(doc, "svr", "model"));
  } else if (kind == "decision_tree") {
    model = tree_from_json(require(doc, "decision_tree", "model"));
  } else if (kind == "ensemble") {
    model = ensemble_from_json(require(doc, "ensemble", "model"));
  } else {
    throw ParseError("model: unknown kind '" + kind + "'");
  }
  const int n = require(doc, "input_dim", "model").get<int>();
  const int m = require(doc, "output_dim", "model").get<int>();
  if (model->input_dim() != n || model->output_dim() != m) {
    throw ParseError("model: declared dims (" + std::to_string(n) + ", " +
                     std::to_string(m) + ") disagree with payload (" +
                     std::to_string(model->input_dim()) + ", " +
                     std::to_string(model->output_dim()) + ")");
  }
  return model;
}

json model_to_json(const SurrogateModel& model) {
  json doc;
  doc["kind"] = model.kind();
  doc["input_dim"] = model.input_dim();
  doc["output_dim"] = model.output_dim();

  if (const auto* mlp = dynamic_cast<const MlpModel*>(&model)) {
    json payload;
    bool uniform = true;
    const auto& acts = mlp->hidden_activations();
    for (const auto& a : acts) uniform = uniform && a == acts.front();
    if (!acts.empty() && uniform) {
      payload["activation"] = to_string(acts.front());
    } else {
      json arr = json::array();
      for (const auto& a : acts) arr.push_back(to_string(a));
      payload["activation"] = std::move(arr);
    }
    json layers = json::array();
    for (std::size_t l = 0; l < mlp->weights().size(); ++l) {
      const Matrix& w = mlp->weights()[l];
      json layer;
      layer["rows"] = static_cast<int>(w.rows());
      layer["cols"] = static_cast<int>(w.cols());
      json flat = json::array();
      for (Eigen::Index r = 0; r < w.rows(); ++r) {
        for (Eigen::Index c = 0; c < w.cols(); ++c) flat.push_back(w(r, c));
      }
      layer["weights"] = std::move(flat);
      layer["bias"] = vector_to_json(mlp->biases()[l]);
      layers.push_back(std::move(layer));
    }
    payload["layers"] = std::move(layers);
    doc["mlp"] = std::move(payload);
    return doc;
  }

  if (const auto* svr = dynamic_cast<const SvrModel*>(&model)) {
    json payload;
    json kernel;
    kernel["kind"] = to_string(svr->kernel().kind);
    if (svr->kernel().kind == KernelKind::Rbf) {
      kernel["gamma"] = svr->kernel().gamma;
    } else if (svr->kernel().kind == KernelKind::Polynomial) {
      kernel["degree"] = svr->kernel().degree;
      kernel["coef"] = svr->kernel().coef;
    }
    payload["kernel"] = std::move(kernel);
    payload["support_vectors"] = matrix_to_json(svr->support_vectors());
    payload["dual_coeffs"] = vector_to_json(svr->dual_coeffs());
    payload["bias"] = svr->bias();
    doc["svr"] = std::move(payload);
    return doc;
  }

  if (const auto* tree = dynamic_cast<const DecisionTreeModel*>(&model)) {
    json payload;
    payload["root"] = tree->root();
    json nodes = json::array();
    for (const auto& node : tree->nodes()) {
      json entry;
      if (const auto* branch = std::get_if<BranchNode>(&node)) {
        entry["type"] = "branch";
        entry["a"] = vector_to_json(branch->a);
        entry["b"] = branch->b;
        entry["left"] = branch->left;
        entry["right"] = branch->right;
      } else {
        entry["type"] = "leaf";
        entry["model"] = leaf_to_json(std::get<LeafModel>(node));
      }
      nodes.push_back(std::move(entry));
    }
    payload["nodes"] = std::move(nodes);
    doc["decision_tree"] = std::move(payload);
    return doc;
  }

  if (const auto* ensemble = dynamic_cast<const EnsembleModel*>(&model)) {
    json payload;
    payload["weights"] = vector_to_json(ensemble->weights());
    json members = json::array();
    for (const auto& member : ensemble->members()) {
      members.push_back(model_to_json(*member));
    }
    payload["members"] = std::move(members);
    doc["ensemble"] = std::move(payload);
    return doc;
  }

  throw ConfigError("model_to_json: kind '" + model.kind() +
                    "' is not serializable");
}

std::shared_ptr<const SurrogateModel> load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return model_from_json(doc);
}

void save_model(const SurrogateModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file: " + path);
  out << model_to_json(model).dump(2) << '\n';
  if (!out) throw IoError("failed writing model file: " + path);
}

}  // namespace surropt
