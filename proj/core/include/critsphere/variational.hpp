#pragma once

#include <Eigen/Dense>

#include "critsphere/fractional_operator.hpp"
#include "critsphere/invariant_harmonics.hpp"

namespace critsphere {

/// Basis, grid and operator for one (params, max_index, quad_count) choice.
class Discretization {
 public:
  Discretization(const ProblemParams& params, int max_index, int quad_count);

  [[nodiscard]] const ProblemParams& params() const { return basis_.params(); }
  [[nodiscard]] const InvariantBasis& basis() const { return basis_; }
  [[nodiscard]] const IntertwiningOperator& op() const { return op_; }
  [[nodiscard]] int mode_count() const { return basis_.mode_count(); }

  /// Zero-pads (or rejects, when too long) a coefficient vector to mode_count().
  [[nodiscard]] Eigen::VectorXd pad(const Eigen::VectorXd& coefficients) const;

 private:
  InvariantBasis basis_;
  IntertwiningOperator op_;
};

/// (integral over S^n of |w|^p)^{1/p} by quadrature.
double lq_norm_sphere(const InvariantBasis& basis, const Eigen::VectorXd& coefficients, double p);
double lq_norm_sphere(const InvariantBasis& basis, const SpectralProfile& w, double p);

/// Coefficients of |w|^{q-2} w, evaluated at the nodes and projected.
Eigen::VectorXd nonlinear_term(const Discretization& disc, const Eigen::VectorXd& coefficients);

/// J(w) = 1/2 <A_s w, w> - 1/q integral |w|^q.
double energy(const Discretization& disc, const Eigen::VectorXd& coefficients);
double energy(const Discretization& disc, const SpectralProfile& w);

/// Coefficients of A_s w - |w|^{q-2} w (all parities, length mode_count()).
Eigen::VectorXd residual(const Discretization& disc, const Eigen::VectorXd& coefficients);
SpectralProfile residual(const Discretization& disc, const SpectralProfile& w);

/// Dual norm of the residual; the convergence metric of every solver here.
double residual_dual(const Discretization& disc, const Eigen::VectorXd& coefficients);

/// t* with t*^2 <A_s w, w> = t*^q |w|_q^q. Throws DomainError for w = 0.
double nehari_scale(const Discretization& disc, const Eigen::VectorXd& coefficients);
double nehari_scale(const Discretization& disc, const SpectralProfile& w);

/// Sign changes of the synthesized profile across the ordered nodes, ignoring
/// values below 1e-12 of the maximum magnitude.
int nodal_count(const InvariantBasis& basis, const Eigen::VectorXd& coefficients);
int nodal_count(const InvariantBasis& basis, const SpectralProfile& w);

}  // namespace critsphere
