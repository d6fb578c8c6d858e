#pragma once

#include <span>
#include <vector>

#include "critsphere/fractional_operator.hpp"
#include "critsphere/invariant_harmonics.hpp"

namespace critsphere {

/// Cell-centred uniform mesh t_i = -1 + (i + 1/2) h, h = 2 / size, on (-1, 1).
struct UniformMesh {
  int size = 0;
  double h = 0.0;

  /// Throws ParameterError for size < 4.
  static UniformMesh with_cells(int size);
  [[nodiscard]] double node(int i) const { return -1.0 + (i + 0.5) * h; }
  [[nodiscard]] std::vector<double> nodes() const;
};

/// Order-one reduction A_1 = -Delta + n(n-2)/4 of the intertwining operator,
/// applied to invariant profiles sampled on the mesh.
///
/// The reduced Laplacian -4 [(1 - t^2) w'' + (beta - alpha - (alpha+beta+2) t) w']
/// is discretized in flux form, -4/rho (rho (1 - t^2) w')' with
/// rho = (1 - t)^alpha (1 + t)^beta: central differences at cell faces, divided
/// by the exact integral of rho over the cell. Second order in the interior;
/// the end cells are first order when alpha or beta is nonzero.
/// The flux vanishes at t = +-1, which supplies the regularity condition at
/// the degenerate endpoints. Throws UnsupportedError unless s = 1.
std::vector<double> ode_linear_apply(const ProblemParams& params, std::span<const double> values,
                                     const UniformMesh& mesh);

/// Pointwise A_1 w - |w|^{q-2} w.
std::vector<double> ode_residual(const ProblemParams& params, std::span<const double> values,
                                 const UniformMesh& mesh);

struct OdeOptions {
  double tol = 1e-9;  // sup-norm residual target
  int max_steps = 200;
  bool antisymmetric = false;  // impose w(-t) = -w(t); needs equal blocks
  bool nehari_prescale = true;  // rescale a nonzero ansatz onto the discrete Nehari set first
};

struct OdeSolution {
  std::vector<double> values;
  double residual_sup = 0.0;
  /// Rounding floor eps |w|_inf |L|_inf below which the sup-norm residual
  /// cannot be pushed; convergence is declared at max(tol, floor).
  double residual_floor = 0.0;
  int iterations = 0;
  bool converged = false;
  bool trivial = false;
};

/// Damped Newton on the discretized equation from the given ansatz.
OdeSolution ode_solve(const ProblemParams& params, std::span<const double> ansatz, const UniformMesh& mesh,
                      const OdeOptions& options = {});

struct OracleComparison {
  OdeSolution ode;
  double sup_difference = 0.0;  // max over mesh nodes of |w_ode - w_spectral|
};

/// Samples a spectral profile on a mesh of `cells` cells, solves the ODE from
/// it (antisymmetric for the odd sector) and reports the sup difference.
OracleComparison compare_with_ode(const InvariantBasis& basis, const SpectralProfile& profile, int cells = 8000,
                                  double tol = 1e-9);

}  // namespace critsphere
