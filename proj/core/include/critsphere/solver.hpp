#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "critsphere/fractional_operator.hpp"
#include "critsphere/variational.hpp"

namespace critsphere {

struct SolverConfig {
  int max_modes = 64;    // number of basis functions (highest index max_modes - 1)
  int quad_count = 256;  // at least 4 * max_modes
  double tol = 1e-9;     // dual-norm residual target
  int max_iter = 20000;
  double step = 0.5;             // relaxation tau in (0, 1]
  double newton_switch = 1e-3;   // dual-norm residual at which Newton takes over
  std::vector<std::pair<int, double>> ansatz;  // (index, amplitude); empty = sector default
  Sector sector = Sector::full;

  /// Throws ParameterError when the fields violate their constraints.
  void validate() const;
};

struct Solution {
  SpectralProfile profile;
  double energy = 0.0;
  double dirichlet = 0.0;
  double residual_dual = 0.0;
  int nodal_count = 0;
  int iterations = 0;
  int newton_steps = 0;
  bool converged = false;
  std::string note;

  [[nodiscard]] bool sign_changing() const { return nodal_count >= 1; }
};

/// Discretization matching a configuration.
Discretization make_discretization(const ProblemParams& params, const SolverConfig& config);

/// Ansatz coefficients projected to the sector. An empty ansatz means the
/// lowest index the sector allows with unit amplitude.
Eigen::VectorXd build_ansatz(const Discretization& disc, const SolverConfig& config);

/// Fills energy, dirichlet, residual and nodal count for a profile.
Solution summarize(const Discretization& disc, SpectralProfile profile, double tol);

/// Nehari-projected preconditioned fixed-point iteration
///   w <- nehari( w + tau (A_s^{-1} P(|w|^{q-2} w) - w) ),
/// P zeroing the parities the sector forbids. Stops at config.tol or
/// config.max_iter and returns the best iterate. Throws NumericError when the
/// iterates stop being finite; non-convergence is reported in the Solution.
Solution iterate(const Discretization& disc, const SolverConfig& config);

struct NewtonOptions {
  double tol = 1e-9;
  int max_steps = 50;
  double max_condition = 1e12;
};

/// Galerkin Newton with step halving, restricted to the profile's sector.
/// Throws RefinementError when the Jacobian is numerically singular.
Solution newton_refine(const Discretization& disc, const SpectralProfile& w, const NewtonOptions& options = {});

/// Gradient phase down to newton_switch, then Newton. Falls back to the
/// gradient iteration when Newton refuses the matrix.
Solution solve(const Discretization& disc, const SolverConfig& config);

struct MinimaxOptions {
  double tol = 1e-3;  // A-norm of the gradient at which Newton takes over
  int max_iter = 2000;
  double initial_step = 0.5;
  NewtonOptions newton;
};

/// Local minimax search for a saddle point above the support space.
///
/// With L = span(support), minimizes over directions v (orthogonal to L in
/// the A_s inner product, kept in the sector) the peak value
///   max { J(u) : u in L + R_{>0} v },
/// descending along the A_s-gradient at the peak. The result is handed to
/// newton_refine. An empty support reduces to a Nehari ground-state search.
Solution minimax(const Discretization& disc, const std::vector<SpectralProfile>& support,
                 const Eigen::VectorXd& direction, Sector sector, const MinimaxOptions& options = {});

struct SequenceResult {
  std::vector<Solution> solutions;  // distinct, converged, strictly increasing dirichlet
  bool complete = false;            // true when `count` solutions were found
  std::vector<std::string> log;     // one line per ladder rung
};

/// Ladder of critical points. Rung 0 is the full-sector ground state; rung j
/// (j = 1, 2, ...) searches the odd (j odd) or even (j even) sector when the
/// blocks are equal, and the full sector otherwise, seeded with Y_j and using
/// the solutions already found in that sector as minimax support.
SequenceResult solve_sequence(const ProblemParams& params, const SolverConfig& config, int count);

/// Relative coefficient distance, minimized over the sign of b.
double profile_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct ResolutionCheck {
  int max_modes = 0;
  int quad_count = 0;
  double residual_dual = 0.0;
  bool passed = false;
};

/// Residual of `profile` re-evaluated with max_modes + 16 modes and twice the
/// quadrature; passes when it is at most 10 tol.
ResolutionCheck verify_resolution(const SpectralProfile& profile, int max_modes, int quad_count, double tol);

}  // namespace critsphere
