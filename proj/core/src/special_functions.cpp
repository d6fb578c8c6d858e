#include "critsphere/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "critsphere/errors.hpp"

namespace critsphere {
namespace {

// B_{2k} / (2k (2k - 1)) for k = 1..8.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,         -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,       -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
};

constexpr double kStirlingThreshold = 10.0;
constexpr int kZetaTerms = 48;

double stirling_tail(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double term = inv;
  double sum = 0.0;
  for (double c : kStirling) {
    sum += c * term;
    term *= inv2;
  }
  return sum;
}

double log_gamma_stirling(double x) {
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + stirling_tail(x);
}

// zeta(k) - 1 for k = 2..kZetaTerms+1, by direct summation plus an
// Euler-Maclaurin tail.
const std::array<double, kZetaTerms + 2>& zeta_minus_one_table() {
  static const std::array<double, kZetaTerms + 2> table = [] {
    // B_2, B_4, ..., B_10 divided by (2j)!.
    constexpr std::array<double, 5> bernoulli_over_factorial = {
        1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0};
    constexpr int cutoff = 16;
    std::array<double, kZetaTerms + 2> out{};
    for (int k = 2; k < kZetaTerms + 2; ++k) {
      double sum = 0.0;
      for (int j = cutoff - 1; j >= 2; --j) sum += std::pow(static_cast<double>(j), -k);
      const double big_m = cutoff;
      double tail = std::pow(big_m, 1.0 - k) / (k - 1) + 0.5 * std::pow(big_m, -k);
      double rising = k;  // (k)_{2j-1}
      for (std::size_t j = 0; j < bernoulli_over_factorial.size(); ++j) {
        const int power = 2 * static_cast<int>(j) + 1;
        tail += bernoulli_over_factorial[j] * rising * std::pow(big_m, -k - power);
        rising *= (k + power) * (k + power + 1.0);
      }
      out[k] = sum + tail;
    }
    return out;
  }();
  return table;
}

// log Gamma(1 + z) for |z| <= 1/2.
double log_gamma_one_plus(double z) {
  const auto& zeta = zeta_minus_one_table();
  double sum = 0.0;
  double power = -z;
  for (int k = 2; k < kZetaTerms + 2; ++k) {
    power *= -z;
    const double term = zeta[k] * power / k;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return -std::log1p(z) + z * (1.0 - std::numbers::egamma) + sum;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite, got " + std::to_string(x));
  }
  if (std::abs(x - 1.0) <= 0.5) return log_gamma_one_plus(x - 1.0);
  if (std::abs(x - 2.0) <= 0.5) return log_gamma_one_plus(x - 2.0) + std::log1p(x - 2.0);
  if (x >= kStirlingThreshold) return log_gamma_stirling(x);

  // Upward recurrence: Gamma(x) = Gamma(x + n) / (x (x+1) ... (x+n-1)).
  double shifted = x;
  double product = 1.0;
  while (shifted < kStirlingThreshold) {
    product *= shifted;
    shifted += 1.0;
  }
  return log_gamma_stirling(shifted) - std::log(product);
}

double gamma_ratio(double a, double s) {
  const double lo = a - s;
  const double hi = a + s;
  if (!(lo > 0.0) || !(hi > 0.0)) {
    throw DomainError("gamma_ratio: need a - s > 0 and a + s > 0 (a=" + std::to_string(a) +
                      ", s=" + std::to_string(s) + ")");
  }
  if (s == 0.0) return 1.0;
  if (lo >= kStirlingThreshold) {
    const double ratio = s / a;
    double log_ratio = 2.0 * s * std::log(a) + (hi - 0.5) * std::log1p(ratio) -
                       (lo - 0.5) * std::log1p(-ratio) - 2.0 * s;
    log_ratio += stirling_tail(hi) - stirling_tail(lo);
    return std::exp(log_ratio);
  }
  return std::exp(log_gamma(hi) - log_gamma(lo));
}

std::vector<double> jacobi_eval_all(int max_degree, double alpha, double beta, double t) {
  if (max_degree < 0) throw ParameterError("jacobi_eval_all: negative degree");
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw ParameterError("jacobi: weight exponents must exceed -1");
  }
  std::vector<double> values(static_cast<std::size_t>(max_degree) + 1);
  values[0] = 1.0;
  if (max_degree == 0) return values;
  const double ab = alpha + beta;
  values[1] = 0.5 * (ab + 2.0) * t + 0.5 * (alpha - beta);
  const double a2b2 = alpha * alpha - beta * beta;
  for (int n = 2; n <= max_degree; ++n) {
    const double two_n_ab = 2.0 * n + ab;
    const double c0 = 2.0 * n * (n + ab) * (two_n_ab - 2.0);
    const double c1 = (two_n_ab - 1.0) * (two_n_ab * (two_n_ab - 2.0) * t + a2b2);
    const double c2 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * two_n_ab;
    values[n] = (c1 * values[n - 1] - c2 * values[n - 2]) / c0;
  }
  return values;
}

double jacobi_eval(int j, double alpha, double beta, double t) {
  if (j < 0) throw ParameterError("jacobi_eval: negative degree");
  if (j == 0) {
    if (!(alpha > -1.0) || !(beta > -1.0)) {
      throw ParameterError("jacobi: weight exponents must exceed -1");
    }
    return 1.0;
  }
  return jacobi_eval_all(j, alpha, beta, t).back();
}

double jacobi_derivative(int j, double alpha, double beta, double t) {
  if (j == 0) return 0.0;
  return 0.5 * (j + alpha + beta + 1.0) * jacobi_eval(j - 1, alpha + 1.0, beta + 1.0, t);
}

double jacobi_weight_mass(double alpha, double beta) {
  return std::exp((alpha + beta + 1.0) * std::log(2.0) + log_gamma(alpha + 1.0) +
                  log_gamma(beta + 1.0) - log_gamma(alpha + beta + 2.0));
}

namespace {

void validate_rule_args(int count, double alpha, double beta) {
  if (count < 1) throw ParameterError("gauss_jacobi: node count must be positive");
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw ParameterError("gauss_jacobi: weight exponents must exceed -1");
  }
}

bool rule_is_clean(const QuadratureGrid& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.nodes[i];
    if (!std::isfinite(x) || x <= -1.0 || x >= 1.0) return false;
    if (i > 0 && !(grid.nodes[i - 1] < x)) return false;
    if (!(grid.weights[i] > 0.0) || !std::isfinite(grid.weights[i])) return false;
  }
  return true;
}

// Newton iteration on P_count from cosine initial guesses. Returns false when
// any root fails to converge.
bool gauss_jacobi_newton(int count, double alpha, double beta, QuadratureGrid& grid) {
  const double log_prefactor = (alpha + beta + 1.0) * std::log(2.0) +
                               log_gamma(count + alpha + 1.0) + log_gamma(count + beta + 1.0) -
                               log_gamma(count + alpha + beta + 1.0) - log_gamma(count + 1.0);
  const double prefactor = std::exp(log_prefactor);
  grid.nodes.resize(count);
  grid.weights.resize(count);
  const double denom = count + 0.5 * (alpha + beta + 1.0);
  for (int k = 1; k <= count; ++k) {
    double x = std::cos(std::numbers::pi * (k - 0.25 + 0.5 * alpha) / denom);
    bool done = false;
    for (int iter = 0; iter < 100; ++iter) {
      const double p = jacobi_eval(count, alpha, beta, x);
      const double dp = jacobi_derivative(count, alpha, beta, x);
      const double dx = p / dp;
      x -= dx;
      if (!std::isfinite(x)) return false;
      if (std::abs(dx) <= 1e-13) {
        // One more step once inside the quadratic regime.
        x -= jacobi_eval(count, alpha, beta, x) / jacobi_derivative(count, alpha, beta, x);
        done = true;
        break;
      }
    }
    if (!done) return false;
    const double dp = jacobi_derivative(count, alpha, beta, x);
    // Roots come out in decreasing order; store increasing.
    grid.nodes[count - k] = x;
    grid.weights[count - k] = prefactor / ((1.0 - x * x) * dp * dp);
  }
  return rule_is_clean(grid);
}

}  // namespace

QuadratureGrid gauss_jacobi_golub_welsch(int count, double alpha, double beta, double measure_scale) {
  validate_rule_args(count, alpha, beta);
  const double ab = alpha + beta;
  Eigen::VectorXd diag(count);
  Eigen::VectorXd sub(std::max(count - 1, 0));
  diag(0) = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < count; ++k) {
    const double two_k_ab = 2.0 * k + ab;
    diag(k) = (beta * beta - alpha * alpha) / (two_k_ab * (two_k_ab + 2.0));
  }
  for (int k = 1; k < count; ++k) {
    const double two_k_ab = 2.0 * k + ab;
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
           (two_k_ab * two_k_ab * (two_k_ab + 1.0) * (two_k_ab - 1.0));
    }
    sub(k - 1) = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (eig.info() != Eigen::Success) {
    throw InternalError("gauss_jacobi: tridiagonal eigensolver failed for count=" +
                        std::to_string(count));
  }
  const double mass = jacobi_weight_mass(alpha, beta);
  QuadratureGrid grid{alpha, beta, {}, {}, measure_scale};
  grid.nodes.resize(count);
  grid.weights.resize(count);
  for (int i = 0; i < count; ++i) {
    grid.nodes[i] = eig.eigenvalues()(i);
    const double v = eig.eigenvectors()(0, i);
    grid.weights[i] = mass * v * v;
  }
  return grid;
}

QuadratureGrid gauss_jacobi(int count, double alpha, double beta, double measure_scale) {
  validate_rule_args(count, alpha, beta);
  QuadratureGrid grid{alpha, beta, {}, {}, measure_scale};
  if (gauss_jacobi_newton(count, alpha, beta, grid)) return grid;

  grid = gauss_jacobi_golub_welsch(count, alpha, beta, measure_scale);
  if (!rule_is_clean(grid)) {
    throw InternalError("gauss_jacobi: root finding failed for count=" + std::to_string(count) +
                        ", alpha=" + std::to_string(alpha) + ", beta=" + std::to_string(beta));
  }
  return grid;
}

double surface_area(int d) {
  if (d < 1) throw ParameterError("surface_area: dimension must be >= 1");
  // |S^0| = 2, |S^1| = 2 pi, |S^{d+1}| = 2 pi |S^{d-1}| / d.
  double area = (d % 2 == 1) ? 2.0 : 2.0 * std::numbers::pi;
  for (int e = (d % 2 == 1) ? 1 : 2; e + 2 <= d; e += 2) area *= 2.0 * std::numbers::pi / e;
  return area;
}

}  // namespace critsphere
