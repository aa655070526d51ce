#include "surropt/ensemble.hpp"

#include <utility>

#include "surropt/errors.hpp"

namespace surropt {

EnsembleModel::EnsembleModel(std::vector<SurrogatePtr> members, Vector weights)
    : members_(std::move(members)), weights_(std::move(weights)) {
  if (members_.empty()) throw ConfigError("EnsembleModel: no members");
  if (weights_.size() != static_cast<Eigen::Index>(members_.size())) {
    throw ShapeError("EnsembleModel: weights length must match member count");
  }
  for (const auto& member : members_) {
    if (!member) throw ConfigError("EnsembleModel: null member");
  }
  input_dim_ = members_.front()->input_dim();
  output_dim_ = members_.front()->output_dim();
  for (const auto& member : members_) {
    if (member->input_dim() != input_dim_ ||
        member->output_dim() != output_dim_) {
      throw ShapeError("EnsembleModel: members disagree on dimensions");
    }
  }
}

Vector EnsembleModel::value(const Vector& x) const {
  check_input(x);
  Vector y = Vector::Zero(output_dim_);
  for (std::size_t i = 0; i < members_.size(); ++i) {
    y.noalias() += weights_[static_cast<Eigen::Index>(i)] * members_[i]->value(x);
  }
  return y;
}

EvalTriple EnsembleModel::eval(const Vector& x) const {
  check_input(x);
  EvalTriple out;
  out.value = Vector::Zero(output_dim_);
  out.jacobian = Matrix::Zero(output_dim_, input_dim_);
  out.hessians.assign(output_dim_, Matrix::Zero(input_dim_, input_dim_));
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const double w = weights_[static_cast<Eigen::Index>(i)];
    const EvalTriple member = members_[i]->eval(x);
    out.value.noalias() += w * member.value;
    out.jacobian.noalias() += w * member.jacobian;
    for (int j = 0; j < output_dim_; ++j) {
      out.hessians[j].noalias() += w * member.hessians[j];
    }
  }
  return out;
}

}  // namespace surropt
