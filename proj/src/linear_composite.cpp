#include "surropt/linear_composite.hpp"

#include "surropt/errors.hpp"

namespace surropt {

NlpProblem to_nlp(const LinearCompositeProblem& problem, int n, int m) {
  if (problem.output_cost.size() != m) {
    throw ShapeError("LinearCompositeProblem: output cost must have length m");
  }
  Vector d = problem.input_cost;
  if (d.size() == 0) d = Vector::Zero(n);
  if (d.size() != n) {
    throw ShapeError("LinearCompositeProblem: input cost must have length n");
  }
  if (!problem.output_bounds.empty() &&
      static_cast<int>(problem.output_bounds.size()) != m) {
    throw ShapeError("LinearCompositeProblem: one output bound entry per output");
  }

  NlpProblem nlp;
  nlp.n = n;
  nlp.m = m;
  nlp.objective = linear_term(d, problem.output_cost, problem.constant);

  for (std::size_t j = 0; j < problem.output_bounds.size(); ++j) {
    const auto& bound = problem.output_bounds[j];
    if (bound.lo && bound.hi && *bound.lo > *bound.hi) {
      throw ConfigError("LinearCompositeProblem: output " + std::to_string(j) +
                        " has lo > hi");
    }
    if (bound.lo) {
      Vector cy = Vector::Zero(m);
      cy[static_cast<Eigen::Index>(j)] = -1.0;
      nlp.inequalities.push_back(linear_term(Vector::Zero(n), cy, *bound.lo));
    }
    if (bound.hi) {
      Vector cy = Vector::Zero(m);
      cy[static_cast<Eigen::Index>(j)] = 1.0;
      nlp.inequalities.push_back(linear_term(Vector::Zero(n), cy, -*bound.hi));
    }
  }

  nlp.x_bounds = problem.x_bounds;
  return nlp;
}

}  // namespace surropt
