#include "critsphere/invariant_harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "critsphere/errors.hpp"

namespace critsphere {

ProblemParams make_params(int n, double s) {
  if (n < 3) throw ParameterError("dimension n must be >= 3, got " + std::to_string(n));
  if (!(s > 0.0) || !(s < 0.5 * n)) {
    throw ParameterError("order s must lie in (0, n/2), got s=" + std::to_string(s) +
                         " for n=" + std::to_string(n));
  }
  ProblemParams p;
  p.n = n;
  p.s = s;
  p.q = 2.0 * n / (n - 2.0 * s);
  p.k = (n + 1) / 2;
  p.m = n + 1 - p.k;
  p.alpha = 0.5 * p.m - 1.0;
  p.beta = 0.5 * p.k - 1.0;
  return p;
}

double measure_scale(const ProblemParams& params) {
  return surface_area(params.k) * surface_area(params.m) / std::pow(2.0, 0.5 * (params.n + 1));
}

double laplace_beltrami_eigenvalue(const ProblemParams& params, int j) {
  if (j < 0) throw ParameterError("laplace_beltrami_eigenvalue: negative index");
  const double degree = 2.0 * j;
  return degree * (degree + params.n - 1);
}

int default_quad_count(int max_index) { return std::max(64, 4 * (max_index + 1)); }

InvariantBasis::InvariantBasis(const ProblemParams& params, int max_index, int quad_count)
    : params_(params), max_index_(max_index) {
  if (max_index < 0) throw ParameterError("max_index must be non-negative");
  if (quad_count < 2 * (max_index + 1)) {
    throw ParameterError("quad_count " + std::to_string(quad_count) + " is below 2*(max_index+1) = " +
                         std::to_string(2 * (max_index + 1)));
  }
  const double scale = measure_scale(params);
  grid_ = gauss_jacobi(quad_count, params.alpha, params.beta, scale);

  const int modes = max_index + 1;
  const auto nodes = static_cast<Eigen::Index>(grid_.size());
  values_.resize(modes, nodes);
  sphere_weights_.resize(nodes);
  for (Eigen::Index i = 0; i < nodes; ++i) {
    const auto p = jacobi_eval_all(max_index, params.alpha, params.beta, grid_.nodes[i]);
    for (int j = 0; j < modes; ++j) values_(j, i) = p[j];
    sphere_weights_(i) = scale * grid_.weights[i];
  }
  norms_.resize(modes);
  for (int j = 0; j < modes; ++j) {
    const double gram = (values_.row(j).array().square() * sphere_weights_.transpose().array()).sum();
    norms_[j] = 1.0 / std::sqrt(gram);
    values_.row(j) *= norms_[j];
  }
}

Eigen::VectorXd InvariantBasis::analyze(std::span<const double> node_values) const {
  if (node_values.size() != grid_.size()) {
    throw ParameterError("analyze: expected " + std::to_string(grid_.size()) + " node values, got " +
                         std::to_string(node_values.size()));
  }
  const Eigen::Map<const Eigen::VectorXd> f(node_values.data(),
                                            static_cast<Eigen::Index>(node_values.size()));
  return values_ * f.cwiseProduct(sphere_weights_);
}

Eigen::VectorXd InvariantBasis::analyze(const Eigen::VectorXd& node_values) const {
  return analyze(std::span<const double>(node_values.data(), static_cast<std::size_t>(node_values.size())));
}

Eigen::VectorXd InvariantBasis::synthesize(const Eigen::VectorXd& coefficients) const {
  const auto count = coefficients.size();
  if (count > mode_count()) {
    throw ParameterError("synthesize: " + std::to_string(count) + " coefficients exceed " +
                         std::to_string(mode_count()) + " basis functions");
  }
  return values_.topRows(count).transpose() * coefficients;
}

double InvariantBasis::evaluate(int j, double t) const {
  if (j < 0 || j > max_index_) throw ParameterError("evaluate: basis index out of range");
  return norms_[j] * jacobi_eval(j, params_.alpha, params_.beta, t);
}

double InvariantBasis::evaluate_series(const Eigen::VectorXd& coefficients, double t) const {
  const auto count = static_cast<int>(coefficients.size());
  if (count > mode_count()) throw ParameterError("evaluate_series: too many coefficients");
  if (count == 0) return 0.0;
  const auto p = jacobi_eval_all(count - 1, params_.alpha, params_.beta, t);
  double sum = 0.0;
  for (int j = 0; j < count; ++j) sum += coefficients(j) * norms_[j] * p[j];
  return sum;
}

}  // namespace critsphere
