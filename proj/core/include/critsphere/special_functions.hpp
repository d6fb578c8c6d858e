#pragma once

#include <vector>

namespace critsphere {

/// Natural logarithm of the Gamma function for x > 0.
///
/// Stirling series with upward recurrence; near the zeros at x = 1 and x = 2
/// a Taylor expansion in (zeta(k) - 1) keeps the result relatively accurate.
/// Throws DomainError for x <= 0.
double log_gamma(double x);

/// Gamma(a + s) / Gamma(a - s). Requires a - s > 0 and a + s > 0.
///
/// For large arguments the two Stirling expansions are subtracted term by
/// term, so the ratio stays accurate for a up to at least 1e5.
double gamma_ratio(double a, double s);

/// Classical Jacobi polynomial P_j^{(alpha, beta)}(t) by the three-term
/// recurrence.
double jacobi_eval(int j, double alpha, double beta, double t);

/// Values P_0(t), ..., P_max(t) in one pass of the recurrence.
std::vector<double> jacobi_eval_all(int max_degree, double alpha, double beta, double t);

/// Derivative d/dt P_j^{(alpha, beta)}(t).
double jacobi_derivative(int j, double alpha, double beta, double t);

/// Gauss-Jacobi rule for the weight (1 - t)^alpha (1 + t)^beta on (-1, 1).
///
/// `measure_scale` is carried along for callers that integrate against a
/// scaled version of the weight (see InvariantBasis); it does not affect the
/// nodes or weights.
struct QuadratureGrid {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> nodes;    // strictly increasing, interior
  std::vector<double> weights;  // strictly positive
  double measure_scale = 1.0;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

/// Nodes are the roots of P_count^{(alpha, beta)}. Newton iteration from
/// cosine initial guesses; Golub-Welsch is the fallback when Newton does not
/// produce a clean set of roots.
QuadratureGrid gauss_jacobi(int count, double alpha, double beta, double measure_scale = 1.0);

/// Golub-Welsch eigenvalue construction of the same rule. Exposed for tests.
QuadratureGrid gauss_jacobi_golub_welsch(int count, double alpha, double beta,
                                         double measure_scale = 1.0);

/// Total mass 2^{alpha+beta+1} B(alpha+1, beta+1) of the Jacobi weight.
double jacobi_weight_mass(double alpha, double beta);

/// Surface area |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2) of the unit sphere in R^d.
double surface_area(int d);

}  // namespace critsphere
