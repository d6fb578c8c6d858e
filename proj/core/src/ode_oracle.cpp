#include "critsphere/ode_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "critsphere/errors.hpp"
#include "critsphere/special_functions.hpp"

namespace critsphere {

UniformMesh UniformMesh::with_cells(int size) {
  if (size < 4) throw ParameterError("ode mesh needs at least 4 cells");
  return {size, 2.0 / size};
}

std::vector<double> UniformMesh::nodes() const {
  std::vector<double> t(size);
  for (int i = 0; i < size; ++i) t[i] = node(i);
  return t;
}

namespace {

// Tridiagonal flux-form operator: row i is lower(i) w_{i-1} + diag(i) w_i + upper(i) w_{i+1}.
struct Stencil {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;
  std::vector<double> mass;  // integral of rho over each cell
};

void require_order_one(const ProblemParams& params) {
  if (params.s != 1.0) {
    throw UnsupportedError("ode oracle supports only s = 1 (got s = " + std::to_string(params.s) + ")");
  }
}

// Exact-to-rounding cell integrals of rho = (1 - t)^alpha (1 + t)^beta. The two
// end cells carry the endpoint singularity in a Gauss-Jacobi weight.
std::vector<double> cell_masses(const ProblemParams& params, const UniformMesh& mesh) {
  const double alpha = params.alpha;
  const double beta = params.beta;
  const double h = mesh.h;
  const QuadratureGrid legendre = gauss_jacobi(8, 0.0, 0.0);
  std::vector<double> mass(mesh.size);
  for (int i = 1; i + 1 < mesh.size; ++i) {
    const double mid = mesh.node(i);
    double sum = 0.0;
    for (std::size_t k = 0; k < legendre.size(); ++k) {
      const double t = mid + 0.5 * h * legendre.nodes[k];
      sum += legendre.weights[k] * std::pow(1.0 - t, alpha) * std::pow(1.0 + t, beta);
    }
    mass[i] = 0.5 * h * sum;
  }
  // Integral over u in (0, h) of u^a (2 - u)^b with u = h (1 + x) / 2.
  auto end_cell = [h](double a, double b) {
    const QuadratureGrid rule = gauss_jacobi(8, 0.0, a);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double u = 0.5 * h * (1.0 + rule.nodes[k]);
      sum += rule.weights[k] * std::pow(2.0 - u, b);
    }
    return std::pow(0.5 * h, a + 1.0) * sum;
  };
  mass.back() = end_cell(alpha, beta);
  mass.front() = end_cell(beta, alpha);
  return mass;
}

Stencil build_stencil(const ProblemParams& params, const UniformMesh& mesh) {
  const int size = mesh.size;
  const double h = mesh.h;
  auto rho = [&](double t) { return std::pow(1.0 - t, params.alpha) * std::pow(1.0 + t, params.beta); };
  // Face i + 1/2 sits at -1 + (i + 1) h; the two boundary faces carry zero flux.
  std::vector<double> face(size + 1, 0.0);
  for (int f = 1; f < size; ++f) {
    const double t = -1.0 + f * h;
    face[f] = rho(t) * (1.0 - t * t) / h;
  }
  const double shift = 0.25 * params.n * (params.n - 2.0);
  Stencil st{std::vector<double>(size), std::vector<double>(size), std::vector<double>(size),
             cell_masses(params, mesh)};
  for (int i = 0; i < size; ++i) {
    const double scale = 4.0 / st.mass[i];
    st.lower[i] = -scale * face[i];
    st.upper[i] = -scale * face[i + 1];
    st.diag[i] = scale * (face[i] + face[i + 1]) + shift;
  }
  return st;
}

std::vector<double> apply_stencil(const Stencil& st, std::span<const double> w) {
  const auto size = w.size();
  std::vector<double> out(size);
  for (std::size_t i = 0; i < size; ++i) {
    double v = st.diag[i] * w[i];
    if (i > 0) v += st.lower[i] * w[i - 1];
    if (i + 1 < size) v += st.upper[i] * w[i + 1];
    out[i] = v;
  }
  return out;
}

void check_size(std::span<const double> values, const UniformMesh& mesh) {
  if (values.size() != static_cast<std::size_t>(mesh.size)) {
    throw ParameterError("ode: expected " + std::to_string(mesh.size) + " mesh values, got " +
                         std::to_string(values.size()));
  }
}

std::vector<double> residual_with(const Stencil& st, double q, std::span<const double> w) {
  std::vector<double> out = apply_stencil(st, w);
  for (std::size_t i = 0; i < w.size(); ++i) out[i] -= std::pow(std::abs(w[i]), q - 2.0) * w[i];
  return out;
}

double sup_norm(const std::vector<double>& v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::abs(x));
  return out;
}

double l2_norm(const std::vector<double>& v) {
  double out = 0.0;
  for (double x : v) out += x * x;
  return std::sqrt(out);
}

void antisymmetrize(std::vector<double>& w) {
  const std::size_t size = w.size();
  for (std::size_t i = 0; i < size / 2; ++i) {
    const double odd = 0.5 * (w[i] - w[size - 1 - i]);
    w[i] = odd;
    w[size - 1 - i] = -odd;
  }
  if (size % 2 == 1) w[size / 2] = 0.0;
}

}  // namespace

std::vector<double> ode_linear_apply(const ProblemParams& params, std::span<const double> values,
                                     const UniformMesh& mesh) {
  require_order_one(params);
  check_size(values, mesh);
  return apply_stencil(build_stencil(params, mesh), values);
}

std::vector<double> ode_residual(const ProblemParams& params, std::span<const double> values,
                                 const UniformMesh& mesh) {
  require_order_one(params);
  check_size(values, mesh);
  return residual_with(build_stencil(params, mesh), params.q, values);
}

OdeSolution ode_solve(const ProblemParams& params, std::span<const double> ansatz, const UniformMesh& mesh,
                      const OdeOptions& options) {
  require_order_one(params);
  check_size(ansatz, mesh);
  if (options.antisymmetric && !params.symmetric_blocks()) {
    throw ParameterError("ode_solve: antisymmetry needs equal block sizes");
  }
  const double q = params.q;
  const Stencil st = build_stencil(params, mesh);
  double operator_norm = 0.0;
  for (int i = 0; i < mesh.size; ++i) {
    operator_norm = std::max(operator_norm, std::abs(st.lower[i]) + std::abs(st.diag[i]) + std::abs(st.upper[i]));
  }

  std::vector<double> w(ansatz.begin(), ansatz.end());
  if (options.antisymmetric) antisymmetrize(w);

  if (options.nehari_prescale && sup_norm(w) > 0.0) {
    // Discrete Nehari scaling with the cell masses as weights.
    const std::vector<double> lw = apply_stencil(st, w);
    double form = 0.0;
    double lq = 0.0;
    for (int i = 0; i < mesh.size; ++i) {
      form += st.mass[i] * lw[i] * w[i];
      lq += st.mass[i] * std::pow(std::abs(w[i]), q);
    }
    if (form > 0.0 && lq > 0.0) {
      const double scale = std::pow(form / lq, 1.0 / (q - 2.0));
      for (double& v : w) v *= scale;
    }
  }

  OdeSolution out;
  std::vector<double> f = residual_with(st, q, w);
  auto floor_of = [&](const std::vector<double>& values) {
    return std::numeric_limits<double>::epsilon() * sup_norm(values) * operator_norm;
  };
  auto target = [&](const std::vector<double>& values) { return std::max(options.tol, floor_of(values)); };

  const auto size = static_cast<Eigen::Index>(mesh.size);
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  int step = 0;
  while (sup_norm(f) > target(w) && step < options.max_steps) {
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(3 * mesh.size);
    for (Eigen::Index i = 0; i < size; ++i) {
      const double dnl = (q - 1.0) * std::pow(std::abs(w[i]), q - 2.0);
      entries.emplace_back(i, i, st.diag[i] - dnl);
      if (i > 0) entries.emplace_back(i, i - 1, st.lower[i]);
      if (i + 1 < size) entries.emplace_back(i, i + 1, st.upper[i]);
    }
    Eigen::SparseMatrix<double> jac(size, size);
    jac.setFromTriplets(entries.begin(), entries.end());
    lu.compute(jac);
    if (lu.info() != Eigen::Success) break;
    Eigen::VectorXd rhs(size);
    for (Eigen::Index i = 0; i < size; ++i) rhs(i) = -f[i];
    const Eigen::VectorXd delta = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !delta.allFinite()) break;

    const double current = l2_norm(f);
    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 30; ++halving) {
      std::vector<double> trial(w);
      for (Eigen::Index i = 0; i < size; ++i) trial[i] += lambda * delta(i);
      if (options.antisymmetric) antisymmetrize(trial);
      std::vector<double> trial_f = residual_with(st, q, trial);
      // Full Newton steps are taken for the first few iterations even when
      // the residual grows; far from the solution the l2 merit is unreliable.
      if (l2_norm(trial_f) < current || (halving == 0 && step < 8)) {
        w = std::move(trial);
        f = std::move(trial_f);
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    ++step;
    if (!accepted) break;
  }

  out.residual_sup = sup_norm(f);
  out.residual_floor = floor_of(w);
  out.iterations = step;
  out.converged = out.residual_sup <= target(w);
  out.trivial = sup_norm(w) <= 1e-12;
  out.values = std::move(w);
  return out;
}

OracleComparison compare_with_ode(const InvariantBasis& basis, const SpectralProfile& profile, int cells,
                                  double tol) {
  const UniformMesh mesh = UniformMesh::with_cells(cells);
  std::vector<double> sampled(mesh.size);
  for (int i = 0; i < mesh.size; ++i) sampled[i] = basis.evaluate_series(profile.coefficients, mesh.node(i));
  OdeOptions options;
  options.tol = tol;
  options.antisymmetric = profile.sector == Sector::odd;
  // The sampled profile is already on the Nehari set up to discretization error.
  options.nehari_prescale = false;
  OracleComparison out;
  out.ode = ode_solve(profile.params, sampled, mesh, options);
  for (int i = 0; i < mesh.size; ++i) {
    out.sup_difference = std::max(out.sup_difference, std::abs(out.ode.values[i] - sampled[i]));
  }
  return out;
}

}  // namespace critsphere
