#pragma once

#include <vector>

#include "critsphere/fractional_operator.hpp"
#include "critsphere/invariant_harmonics.hpp"

namespace critsphere {

/// Point of R^n; the first k coordinates form block 1, the rest block 2.
struct EuclideanPoint {
  std::vector<double> coordinates;
};

/// Point of the unit sphere S^n in R^{n+1}.
struct SpherePoint {
  std::vector<double> coordinates;
};

/// Block radii (|x'|, |x''|) of a point of R^n. G-invariant functions on R^n
/// depend on these alone.
struct BiradialPoint {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// pi(x) = (2x / (1 + |x|^2), (1 - |x|^2) / (1 + |x|^2)).
SpherePoint stereographic(const EuclideanPoint& x);

/// x = xi' / (1 + xi_{n+1}). Throws DomainError at the south pole.
EuclideanPoint stereographic_inverse(const SpherePoint& xi);

/// (2 / (1 + |x|^2))^n, the volume distortion of pi.
double jacobian(const EuclideanPoint& x);

/// U(x) = (2 / (1 + |x|^2))^{(n - 2s)/2}, so that U^q equals the Jacobian.
double conformal_factor(const EuclideanPoint& x, const ProblemParams& params);
double conformal_factor(const BiradialPoint& p, const ProblemParams& params);

BiradialPoint to_biradial(const EuclideanPoint& x, int k);

/// t = |xi_1|^2 - |xi_2|^2 of a sphere point with block sizes (k, n+1-k).
double sphere_profile_coordinate(const SpherePoint& xi, int k);

/// t of pi(x) in terms of the block radii.
double profile_coordinate(const BiradialPoint& p);

/// v(p) = U(p) w(t(p)): the Euclidean function corresponding to the sphere
/// profile w.
double pullback(const SpectralProfile& w, const InvariantBasis& basis, const BiradialPoint& p);

/// (integral over R^n of |v|^q dx)^{1/q} for v the pullback of w.
///
/// Tensor Gauss-Legendre quadrature in (phi_1, phi_2) with r = tan(phi / 2)
/// on each block radius. The rule is run with radial_quad and 2 radial_quad
/// points; relative disagreement above 1e-5 raises AccuracyError.
double lq_norm_euclidean(const SpectralProfile& w, const InvariantBasis& basis, double q,
                         int radial_quad = 96);

}  // namespace critsphere
