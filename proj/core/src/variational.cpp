#include "critsphere/variational.hpp"

#include <cmath>
#include <string>

#include "critsphere/errors.hpp"

namespace critsphere {

Discretization::Discretization(const ProblemParams& params, int max_index, int quad_count)
    : basis_(params, max_index, quad_count), op_(params, max_index) {}

Eigen::VectorXd Discretization::pad(const Eigen::VectorXd& coefficients) const {
  if (coefficients.size() > mode_count()) {
    throw ParameterError("profile has " + std::to_string(coefficients.size()) +
                         " coefficients; discretization holds " + std::to_string(mode_count()));
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(mode_count());
  out.head(coefficients.size()) = coefficients;
  return out;
}

double lq_norm_sphere(const InvariantBasis& basis, const Eigen::VectorXd& coefficients, double p) {
  if (!(p >= 1.0)) throw ParameterError("lq_norm_sphere: exponent must be >= 1");
  const Eigen::VectorXd w = basis.synthesize(coefficients);
  const double peak = w.size() == 0 ? 0.0 : w.cwiseAbs().maxCoeff();
  if (!(peak > 0.0) || !std::isfinite(peak)) return peak;
  // Factor out the peak so large exponents neither overflow nor underflow.
  const double integral = basis.sphere_weights().dot((w.array().abs() / peak).pow(p).matrix());
  return peak * std::pow(integral, 1.0 / p);
}

double lq_norm_sphere(const InvariantBasis& basis, const SpectralProfile& w, double p) {
  return lq_norm_sphere(basis, w.coefficients, p);
}

Eigen::VectorXd nonlinear_term(const Discretization& disc, const Eigen::VectorXd& coefficients) {
  const double q = disc.params().q;
  const Eigen::VectorXd w = disc.basis().synthesize(coefficients);
  const Eigen::VectorXd f = (w.array().abs().pow(q - 2.0) * w.array()).matrix();
  return disc.basis().analyze(f);
}

double energy(const Discretization& disc, const Eigen::VectorXd& coefficients) {
  const double q = disc.params().q;
  const double lq = lq_norm_sphere(disc.basis(), coefficients, q);
  return 0.5 * disc.op().dirichlet_form(coefficients) - std::pow(lq, q) / q;
}

double energy(const Discretization& disc, const SpectralProfile& w) { return energy(disc, w.coefficients); }

Eigen::VectorXd residual(const Discretization& disc, const Eigen::VectorXd& coefficients) {
  const Eigen::VectorXd c = disc.pad(coefficients);
  return disc.op().apply(c) - nonlinear_term(disc, c);
}

SpectralProfile residual(const Discretization& disc, const SpectralProfile& w) {
  return {w.params, Sector::full, residual(disc, w.coefficients)};
}

double residual_dual(const Discretization& disc, const Eigen::VectorXd& coefficients) {
  return disc.op().dual_norm(residual(disc, coefficients));
}

double nehari_scale(const Discretization& disc, const Eigen::VectorXd& coefficients) {
  const double q = disc.params().q;
  // t*(a c) = t*(c) / a, so work with c / max|c| to keep the powers in range.
  const double size = coefficients.size() == 0 ? 0.0 : coefficients.cwiseAbs().maxCoeff();
  if (!(size > 0.0) || !std::isfinite(size)) throw DomainError("nehari_scale: zero or non-finite profile");
  const Eigen::VectorXd unit = coefficients / size;
  const double form = disc.op().dirichlet_form(unit);
  const double lq = lq_norm_sphere(disc.basis(), unit, q);
  if (!(form > 0.0) || !(lq > 0.0)) throw DomainError("nehari_scale: zero profile");
  // (form / lq^q)^{1/(q-2)} without forming lq^q, which overflows for large q.
  return std::exp((std::log(form) - q * std::log(lq)) / (q - 2.0) - std::log(size));
}

double nehari_scale(const Discretization& disc, const SpectralProfile& w) {
  return nehari_scale(disc, w.coefficients);
}

int nodal_count(const InvariantBasis& basis, const Eigen::VectorXd& coefficients) {
  const Eigen::VectorXd w = basis.synthesize(coefficients);
  const double cutoff = 1e-12 * w.cwiseAbs().maxCoeff();
  int changes = 0;
  int last_sign = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (std::abs(w(i)) <= cutoff) continue;
    const int sign = w(i) > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

int nodal_count(const InvariantBasis& basis, const SpectralProfile& w) {
  return nodal_count(basis, w.coefficients);
}

}  // namespace critsphere
