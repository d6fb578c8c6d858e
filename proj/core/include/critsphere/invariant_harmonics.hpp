#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "critsphere/special_functions.hpp"

namespace critsphere {

/// Dimension, order and the symmetry data derived from them.
///
/// The sphere S^n sits in R^{n+1} = R^k x R^m with k = floor((n+1)/2),
/// m = ceil((n+1)/2). Functions invariant under O(k) x O(m) depend only on
/// t = |xi_1|^2 - |xi_2|^2, and the sphere measure pushes forward to
/// C (1 - t)^alpha (1 + t)^beta dt with alpha = m/2 - 1, beta = k/2 - 1.
struct ProblemParams {
  int n = 3;
  double s = 1.0;
  double q = 6.0;  // critical exponent 2n / (n - 2s)
  int k = 2;
  int m = 2;
  double alpha = 0.0;
  double beta = 0.0;

  /// True when the two blocks have equal size, i.e. n is odd and the block
  /// swap (xi_1, xi_2) -> (xi_2, xi_1) acts as t -> -t.
  [[nodiscard]] bool symmetric_blocks() const { return k == m; }
};

/// Throws ParameterError unless n >= 3 and 0 < s < n/2.
ProblemParams make_params(int n, double s);

/// C = |S^{k-1}| |S^{m-1}| / 2^{(n+1)/2}.
double measure_scale(const ProblemParams& params);

/// -Delta eigenvalue of the invariant harmonic with index j (degree 2j).
double laplace_beltrami_eigenvalue(const ProblemParams& params, int j);

/// Orthonormal basis Y_j = N_j P_j^{(alpha, beta)}(t), j = 0..max_index, of
/// the G-invariant harmonics, sampled on a Gauss-Jacobi grid.
class InvariantBasis {
 public:
  /// Requires quad_count >= 2 (max_index + 1).
  InvariantBasis(const ProblemParams& params, int max_index, int quad_count);

  [[nodiscard]] const ProblemParams& params() const { return params_; }
  [[nodiscard]] int max_index() const { return max_index_; }
  [[nodiscard]] int mode_count() const { return max_index_ + 1; }
  [[nodiscard]] const QuadratureGrid& grid() const { return grid_; }
  [[nodiscard]] std::size_t node_count() const { return grid_.size(); }
  [[nodiscard]] const std::vector<double>& norm_constants() const { return norms_; }

  /// Y_j at node i is values()(j, i).
  [[nodiscard]] const Eigen::MatrixXd& values() const { return values_; }

  /// C * w_i at every node: integral of f over S^n is the dot product with
  /// the node values of f.
  [[nodiscard]] const Eigen::VectorXd& sphere_weights() const { return sphere_weights_; }

  /// c_j = integral over S^n of f Y_j, by quadrature.
  [[nodiscard]] Eigen::VectorXd analyze(std::span<const double> node_values) const;
  [[nodiscard]] Eigen::VectorXd analyze(const Eigen::VectorXd& node_values) const;

  /// f(t_i) = sum_j c_j Y_j(t_i). Fewer than mode_count() coefficients are
  /// zero-padded.
  [[nodiscard]] Eigen::VectorXd synthesize(const Eigen::VectorXd& coefficients) const;

  /// Y_j at an arbitrary t in [-1, 1].
  [[nodiscard]] double evaluate(int j, double t) const;

  /// sum_j c_j Y_j(t) at an arbitrary t.
  [[nodiscard]] double evaluate_series(const Eigen::VectorXd& coefficients, double t) const;

 private:
  ProblemParams params_;
  int max_index_;
  QuadratureGrid grid_;
  std::vector<double> norms_;
  Eigen::MatrixXd values_;
  Eigen::VectorXd sphere_weights_;
};

/// Quadrature count used when the caller does not choose one.
int default_quad_count(int max_index);

}  // namespace critsphere
