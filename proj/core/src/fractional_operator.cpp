#include "critsphere/fractional_operator.hpp"

#include <cmath>

#include "critsphere/errors.hpp"

namespace critsphere {

std::string_view to_string(Sector sector) {
  switch (sector) {
    case Sector::full:
      return "full";
    case Sector::odd:
      return "odd";
    case Sector::even:
      return "even";
  }
  return "full";
}

Sector parse_sector(std::string_view text) {
  if (text == "full") return Sector::full;
  if (text == "odd") return Sector::odd;
  if (text == "even") return Sector::even;
  throw ParameterError("unknown sector '" + std::string(text) + "' (expected full, odd or even)");
}

bool sector_allows(Sector sector, int j) {
  switch (sector) {
    case Sector::full:
      return true;
    case Sector::odd:
      return j % 2 == 1;
    case Sector::even:
      return j % 2 == 0;
  }
  return true;
}

void project_to_sector(Sector sector, Eigen::VectorXd& coefficients) {
  if (sector == Sector::full) return;
  for (Eigen::Index j = 0; j < coefficients.size(); ++j) {
    if (!sector_allows(sector, static_cast<int>(j))) coefficients(j) = 0.0;
  }
}

void SpectralProfile::validate() const {
  if (!coefficients.allFinite()) throw ParameterError("profile has non-finite coefficients");
  if (sector == Sector::full) return;
  if (!params.symmetric_blocks()) {
    throw ParameterError("parity sectors require equal block sizes (odd n)");
  }
  for (Eigen::Index j = 0; j < coefficients.size(); ++j) {
    if (!sector_allows(sector, static_cast<int>(j)) && coefficients(j) != 0.0) {
      throw ParameterError("profile has a coefficient outside its " + std::string(to_string(sector)) +
                           " sector at index " + std::to_string(j));
    }
  }
}

double eigenvalue(const ProblemParams& params, int l) {
  if (l < 0) throw ParameterError("eigenvalue: negative degree");
  return gamma_ratio(0.5 * params.n + l, params.s);
}

IntertwiningOperator::IntertwiningOperator(const ProblemParams& params, int max_index)
    : params_(params), eigenvalues_(max_index + 1) {
  for (int j = 0; j <= max_index; ++j) eigenvalues_(j) = eigenvalue(params, 2 * j);
}

void IntertwiningOperator::check_length(Eigen::Index count) const {
  if (count > eigenvalues_.size()) {
    throw ParameterError("profile has " + std::to_string(count) + " coefficients; operator holds " +
                         std::to_string(eigenvalues_.size()));
  }
}

Eigen::VectorXd IntertwiningOperator::apply(const Eigen::VectorXd& coefficients) const {
  check_length(coefficients.size());
  return eigenvalues_.head(coefficients.size()).cwiseProduct(coefficients);
}

Eigen::VectorXd IntertwiningOperator::apply_inverse(const Eigen::VectorXd& coefficients) const {
  check_length(coefficients.size());
  return coefficients.cwiseQuotient(eigenvalues_.head(coefficients.size()));
}

SpectralProfile IntertwiningOperator::apply(const SpectralProfile& w) const {
  return {w.params, w.sector, apply(w.coefficients)};
}

SpectralProfile IntertwiningOperator::apply_inverse(const SpectralProfile& w) const {
  return {w.params, w.sector, apply_inverse(w.coefficients)};
}

double IntertwiningOperator::dirichlet_form(const Eigen::VectorXd& coefficients) const {
  check_length(coefficients.size());
  return (eigenvalues_.head(coefficients.size()).array() * coefficients.array().square()).sum();
}

double IntertwiningOperator::dirichlet_form(const SpectralProfile& w) const {
  return dirichlet_form(w.coefficients);
}

double IntertwiningOperator::inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  check_length(a.size());
  if (a.size() != b.size()) throw ParameterError("inner: length mismatch");
  return (eigenvalues_.head(a.size()).array() * a.array() * b.array()).sum();
}

double IntertwiningOperator::dual_norm(const Eigen::VectorXd& coefficients) const {
  check_length(coefficients.size());
  return std::sqrt((coefficients.array().square() / eigenvalues_.head(coefficients.size()).array()).sum());
}

double IntertwiningOperator::dual_norm(const SpectralProfile& r) const { return dual_norm(r.coefficients); }

}  // namespace critsphere
