#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "critsphere/invariant_harmonics.hpp"

namespace critsphere {

/// Parity sector of a profile under the block swap t -> -t. Only meaningful
/// when the blocks have equal size; otherwise only `full` is valid.
enum class Sector { full, odd, even };

std::string_view to_string(Sector sector);
/// Accepts "full", "odd", "even"; throws ParameterError otherwise.
Sector parse_sector(std::string_view text);

/// True when basis index j is allowed in the sector.
bool sector_allows(Sector sector, int j);

/// Zeroes the coefficients a sector forbids.
void project_to_sector(Sector sector, Eigen::VectorXd& coefficients);

/// A G-invariant function on S^n given by its coefficients in the
/// orthonormal invariant-harmonic basis.
struct SpectralProfile {
  ProblemParams params;
  Sector sector = Sector::full;
  Eigen::VectorXd coefficients;

  /// Throws ParameterError on non-finite coefficients, on a parity sector
  /// for unequal blocks, or on nonzero coefficients the sector forbids.
  void validate() const;
};

/// Eigenvalue Gamma(n/2 + l + s) / Gamma(n/2 + l - s) of A_s on degree-l
/// spherical harmonics.
double eigenvalue(const ProblemParams& params, int l);

/// A_s restricted to the invariant harmonics j = 0..max_index (degree 2j),
/// with its eigenvalues cached.
class IntertwiningOperator {
 public:
  IntertwiningOperator(const ProblemParams& params, int max_index);

  [[nodiscard]] const ProblemParams& params() const { return params_; }
  [[nodiscard]] int mode_count() const { return static_cast<int>(eigenvalues_.size()); }

  /// lambda_{2j} for j = 0..max_index.
  [[nodiscard]] const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

  [[nodiscard]] Eigen::VectorXd apply(const Eigen::VectorXd& coefficients) const;
  [[nodiscard]] Eigen::VectorXd apply_inverse(const Eigen::VectorXd& coefficients) const;
  [[nodiscard]] SpectralProfile apply(const SpectralProfile& w) const;
  [[nodiscard]] SpectralProfile apply_inverse(const SpectralProfile& w) const;

  /// <A_s w, w> = sum_j lambda_{2j} c_j^2.
  [[nodiscard]] double dirichlet_form(const Eigen::VectorXd& coefficients) const;
  [[nodiscard]] double dirichlet_form(const SpectralProfile& w) const;

  /// A_s-weighted inner product sum_j lambda_{2j} a_j b_j.
  [[nodiscard]] double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

  /// sqrt(sum_j r_j^2 / lambda_{2j}).
  [[nodiscard]] double dual_norm(const Eigen::VectorXd& coefficients) const;
  [[nodiscard]] double dual_norm(const SpectralProfile& r) const;

 private:
  void check_length(Eigen::Index count) const;

  ProblemParams params_;
  Eigen::VectorXd eigenvalues_;
};

}  // namespace critsphere
