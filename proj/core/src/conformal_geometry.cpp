#include "critsphere/conformal_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "critsphere/errors.hpp"
#include "critsphere/special_functions.hpp"

namespace critsphere {
namespace {

double squared_norm(const std::vector<double>& v, std::size_t begin, std::size_t end) {
  double sum = 0.0;
  for (std::size_t i = begin; i < end; ++i) sum += v[i] * v[i];
  return sum;
}

}  // namespace

SpherePoint stereographic(const EuclideanPoint& x) {
  const auto& c = x.coordinates;
  const double rho2 = squared_norm(c, 0, c.size());
  const double denom = 1.0 + rho2;
  SpherePoint xi;
  xi.coordinates.reserve(c.size() + 1);
  for (double v : c) xi.coordinates.push_back(2.0 * v / denom);
  xi.coordinates.push_back((1.0 - rho2) / denom);
  return xi;
}

EuclideanPoint stereographic_inverse(const SpherePoint& xi) {
  const auto& c = xi.coordinates;
  if (c.size() < 2) throw ParameterError("stereographic_inverse: need at least two coordinates");
  const double last = c.back();
  const double denom = 1.0 + last;
  if (!(denom > 0.0)) throw DomainError("stereographic_inverse: the south pole has no preimage");
  EuclideanPoint x;
  x.coordinates.reserve(c.size() - 1);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) x.coordinates.push_back(c[i] / denom);
  return x;
}

double jacobian(const EuclideanPoint& x) {
  const double rho2 = squared_norm(x.coordinates, 0, x.coordinates.size());
  return std::pow(2.0 / (1.0 + rho2), static_cast<double>(x.coordinates.size()));
}

double conformal_factor(const BiradialPoint& p, const ProblemParams& params) {
  const double rho2 = p.r1 * p.r1 + p.r2 * p.r2;
  return std::pow(2.0 / (1.0 + rho2), 0.5 * (params.n - 2.0 * params.s));
}

double conformal_factor(const EuclideanPoint& x, const ProblemParams& params) {
  const double rho2 = squared_norm(x.coordinates, 0, x.coordinates.size());
  return std::pow(2.0 / (1.0 + rho2), 0.5 * (params.n - 2.0 * params.s));
}

BiradialPoint to_biradial(const EuclideanPoint& x, int k) {
  const auto& c = x.coordinates;
  if (k < 0 || static_cast<std::size_t>(k) > c.size()) throw ParameterError("to_biradial: bad block size");
  return {std::sqrt(squared_norm(c, 0, k)), std::sqrt(squared_norm(c, k, c.size()))};
}

double sphere_profile_coordinate(const SpherePoint& xi, int k) {
  const auto& c = xi.coordinates;
  if (k < 0 || static_cast<std::size_t>(k) > c.size()) {
    throw ParameterError("sphere_profile_coordinate: bad block size");
  }
  return squared_norm(c, 0, k) - squared_norm(c, k, c.size());
}

double profile_coordinate(const BiradialPoint& p) {
  const double a = p.r1 * p.r1;
  const double b = p.r2 * p.r2;
  const double rho2 = a + b;
  const double denom = (1.0 + rho2) * (1.0 + rho2);
  const double t = (4.0 * a - 4.0 * b - (1.0 - rho2) * (1.0 - rho2)) / denom;
  return std::clamp(t, -1.0, 1.0);
}

double pullback(const SpectralProfile& w, const InvariantBasis& basis, const BiradialPoint& p) {
  return conformal_factor(p, w.params) * basis.evaluate_series(w.coefficients, profile_coordinate(p));
}

namespace {

double euclidean_lq_integral(const SpectralProfile& w, const InvariantBasis& basis, double q, int count) {
  const ProblemParams& params = w.params;
  const int k = params.k;
  const int m = params.m;
  const QuadratureGrid rule = gauss_jacobi(count, 0.0, 0.0);

  // phi in (0, pi), r = tan(phi/2), dr = (1 + r^2)/2 dphi.
  const double half_pi = 0.5 * std::numbers::pi;
  std::vector<double> radius(count);
  std::vector<double> radial_weight(count);
  for (int i = 0; i < count; ++i) {
    const double phi = half_pi * (rule.nodes[i] + 1.0);
    radius[i] = std::tan(0.5 * phi);
    radial_weight[i] = half_pi * rule.weights[i] * 0.5 * (1.0 + radius[i] * radius[i]);
  }
  const double angular = surface_area(k) * surface_area(m - 1);
  double sum = 0.0;
  for (int i = 0; i < count; ++i) {
    const double r1 = radius[i];
    const double wi = radial_weight[i] * std::pow(r1, k - 1);
    double row = 0.0;
    for (int j = 0; j < count; ++j) {
      const double r2 = radius[j];
      const double v = pullback(w, basis, {r1, r2});
      row += radial_weight[j] * std::pow(r2, m - 2) * std::pow(std::abs(v), q);
    }
    sum += wi * row;
  }
  return angular * sum;
}

}  // namespace

double lq_norm_euclidean(const SpectralProfile& w, const InvariantBasis& basis, double q, int radial_quad) {
  if (!(q > 2.0)) throw ParameterError("lq_norm_euclidean: exponent must exceed 2");
  if (radial_quad < 2) throw ParameterError("lq_norm_euclidean: radial_quad must be >= 2");
  if (w.coefficients.size() == 0 || w.coefficients.isZero(0.0)) return 0.0;
  const double coarse = euclidean_lq_integral(w, basis, q, radial_quad);
  const double fine = euclidean_lq_integral(w, basis, q, 2 * radial_quad);
  if (std::abs(fine - coarse) > 1e-5 * std::abs(fine)) {
    throw AccuracyError("lq_norm_euclidean: refinement disagreement " +
                        std::to_string(std::abs(fine - coarse) / std::abs(fine)) + " exceeds 1e-5");
  }
  return std::pow(fine, 1.0 / q);
}

}  // namespace critsphere
