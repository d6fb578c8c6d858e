#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "support.hpp"

#include "critsphere/errors.hpp"
#include "critsphere/special_functions.hpp"

using namespace critsphere;
using testing_support::rel_err;
using testing_support::uniform;

TEST_SUITE("special_functions") {
  TEST_CASE("log_gamma frozen values") {
    CHECK(log_gamma(1.0) == 0.0);
    CHECK(log_gamma(2.0) == 0.0);
    CHECK(rel_err(log_gamma(0.5), 0.5 * std::log(std::numbers::pi)) < 1e-15);
    // log(9!) = log 362880
    CHECK(rel_err(log_gamma(10.0), std::log(362880.0)) < 1e-15);
    CHECK(rel_err(log_gamma(1.5), std::log(0.5 * std::sqrt(std::numbers::pi))) < 1e-14);
  }

  TEST_CASE("log_gamma agrees with the C library across all branches") {
    for (double x : {1e-8, 0.01, 0.3, 0.75, 1.0 + 1e-9, 1.49, 1.51, 2.5, 3.7, 9.99, 10.0, 10.01, 57.3, 1e4, 1e8}) {
      CAPTURE(x);
      const double want = std::lgamma(x);
      CHECK(std::abs(log_gamma(x) - want) <= 1e-14 * std::max(1.0, std::abs(want)));
    }
  }

  TEST_CASE("log_gamma keeps relative accuracy near its zeros") {
    // Gamma(1 + z) ~ 1 - gamma z; lgamma is O(z) there.
    for (double z : {1e-6, -1e-6, 1e-3}) {
      const double series = -std::numbers::egamma * z + std::numbers::pi * std::numbers::pi / 12.0 * z * z;
      CHECK(rel_err(log_gamma(1.0 + z), series) < 1e-5);
      CHECK(rel_err(log_gamma(2.0 + z), std::log1p(z) + series) < 1e-5);
    }
  }

  TEST_CASE("log_gamma recurrence property") {
    for (int trial = 0; trial < 200; ++trial) {
      const double x = std::exp(uniform(std::log(1e-3), std::log(1e3)));
      CAPTURE(x);
      CHECK(std::abs(log_gamma(x + 1.0) - log_gamma(x) - std::log(x)) <= 1e-14 * std::max(1.0, std::abs(log_gamma(x))));
    }
  }

  TEST_CASE("log_gamma domain") {
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-2.5), DomainError);
    CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::infinity()), DomainError);
  }

  TEST_CASE("gamma_ratio closed forms") {
    CHECK(gamma_ratio(1.5, 1.0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(gamma_ratio(7.0, 0.0) == 1.0);
    // Integer s: Gamma(a+s)/Gamma(a-s) = (a-s)(a-s+1)...(a+s-1).
    for (int trial = 0; trial < 100; ++trial) {
      const int s = testing_support::uniform_int(1, 4);
      const double a = uniform(s + 0.01, 200.0);
      double product = 1.0;
      for (int i = -s; i < s; ++i) product *= a + i;
      CAPTURE(a);
      CAPTURE(s);
      CHECK(rel_err(gamma_ratio(a, s), product) < 1e-12);
    }
  }

  TEST_CASE("gamma_ratio large argument against the asymptotic expansion") {
    // Gamma(a + 1/2)/Gamma(a - 1/2) = a - 1/2 exactly, the difference path must see that.
    for (double a : {20.0, 1e3, 1e5, 1e7}) CHECK(rel_err(gamma_ratio(a, 0.5), a - 0.5) < 1e-14);
    // Frozen 40-digit value of Gamma(10000.25)/Gamma(9999.75).
    CHECK(rel_err(gamma_ratio(1e4, 0.25), 99.997499984375390650634) < 1e-14);
  }

  TEST_CASE("gamma_ratio domain") {
    CHECK_THROWS_AS(gamma_ratio(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(gamma_ratio(0.5, 2.0), DomainError);
  }

  TEST_CASE("jacobi closed forms") {
    for (double t : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
      CHECK(jacobi_eval(0, 0.3, 1.2, t) == 1.0);
      CHECK(jacobi_eval(1, 0.3, 1.2, t) == doctest::Approx(0.5 * (3.5 * t + 0.3 - 1.2)).epsilon(1e-15));
      CHECK(jacobi_eval(2, 0.0, 0.0, t) == doctest::Approx(1.5 * t * t - 0.5).epsilon(1e-15));
      CHECK(jacobi_eval(3, 0.0, 0.0, t) == doctest::Approx(2.5 * t * t * t - 1.5 * t).epsilon(1e-14));
    }
    // P_j(1) = binom(j + alpha, j); symmetry P_j^{(a,b)}(-t) = (-1)^j P_j^{(b,a)}(t).
    for (int j = 0; j < 30; ++j) {
      const double alpha = 0.5;
      const double binom = std::exp(std::lgamma(j + alpha + 1) - std::lgamma(j + 1.0) - std::lgamma(alpha + 1));
      CHECK(rel_err(jacobi_eval(j, alpha, -0.5, 1.0), binom) < 1e-12);
      const double sign = j % 2 == 0 ? 1.0 : -1.0;
      CHECK(jacobi_eval(j, 0.5, 0.0, -0.37) == doctest::Approx(sign * jacobi_eval(j, 0.0, 0.5, 0.37)).epsilon(1e-12));
    }
  }

  TEST_CASE("jacobi_eval_all matches single evaluation") {
    const auto all = jacobi_eval_all(40, 0.5, 0.0, 0.41);
    REQUIRE(all.size() == 41);
    for (int j = 0; j <= 40; ++j) CHECK(all[j] == doctest::Approx(jacobi_eval(j, 0.5, 0.0, 0.41)).epsilon(1e-14));
  }

  TEST_CASE("jacobi_derivative against central differences") {
    const double h = 1e-5;
    for (int trial = 0; trial < 100; ++trial) {
      const int j = testing_support::uniform_int(0, 25);
      const double alpha = uniform(-0.5, 2.0);
      const double beta = uniform(-0.5, 2.0);
      const double t = uniform(-0.95, 0.95);
      const double fd = (jacobi_eval(j, alpha, beta, t + h) - jacobi_eval(j, alpha, beta, t - h)) / (2 * h);
      const double scale = std::max(1.0, std::abs(fd));
      CAPTURE(j);
      CHECK(std::abs(jacobi_derivative(j, alpha, beta, t) - fd) < 1e-6 * scale * (j + 1) * (j + 1));
    }
  }

  TEST_CASE("jacobi parameter checks") {
    CHECK_THROWS_AS(jacobi_eval(-1, 0.0, 0.0, 0.0), ParameterError);
    CHECK_THROWS_AS(jacobi_eval(2, -1.0, 0.0, 0.0), ParameterError);
  }

  TEST_CASE("gauss_jacobi integrates Beta moments exactly") {
    for (auto [alpha, beta] : {std::pair{0.0, 0.0}, {0.5, 0.0}, {0.5, 0.5}, {1.0, 0.5}, {-0.5, 1.5}}) {
      const int count = 12;
      const auto grid = gauss_jacobi(count, alpha, beta);
      // integral of (1-t)^alpha (1+t)^(beta+p) = 2^(alpha+beta+p+1) B(alpha+1, beta+p+1)
      for (int p = 0; p <= 2 * count - 1; ++p) {
        const double exact = std::exp((alpha + beta + p + 1) * std::log(2.0) + std::lgamma(alpha + 1) +
                                      std::lgamma(beta + p + 1) - std::lgamma(alpha + beta + p + 2));
        double sum = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) sum += grid.weights[i] * std::pow(1.0 + grid.nodes[i], p);
        CAPTURE(alpha);
        CAPTURE(p);
        CHECK(rel_err(sum, exact) < 1e-13);
      }
    }
  }

  TEST_CASE("gauss_jacobi structure and agreement with Golub-Welsch") {
    for (int count : {1, 2, 5, 64, 256, 900}) {
      const auto grid = gauss_jacobi(count, 0.5, 0.0, 3.0);
      const auto gw = gauss_jacobi_golub_welsch(count, 0.5, 0.0, 3.0);
      REQUIRE(grid.size() == static_cast<std::size_t>(count));
      CHECK(grid.measure_scale == 3.0);
      const double total = jacobi_weight_mass(0.5, 0.0);
      double mass = 0.0;
      for (int i = 0; i < count; ++i) {
        CHECK(grid.weights[i] > 0.0);
        CHECK(std::abs(grid.nodes[i]) < 1.0);
        if (i > 0) CHECK(grid.nodes[i] > grid.nodes[i - 1]);
        CHECK(std::abs(grid.nodes[i] - gw.nodes[i]) < 1e-12);
        CHECK(std::abs(grid.weights[i] - gw.weights[i]) < 1e-14 * total);
        mass += grid.weights[i];
      }
      CHECK(rel_err(mass, jacobi_weight_mass(0.5, 0.0)) < 1e-12);
    }
    CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0), ParameterError);
    CHECK_THROWS_AS(gauss_jacobi(4, -1.5, 0.0), ParameterError);
  }

  TEST_CASE("brute-force Legendre orthogonality") {
    // Composite Simpson on a fine grid, independent of any Gauss rule.
    const int panels = 20000;
    const double h = 2.0 / panels;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        double sum = 0.0;
        for (int p = 0; p <= panels; ++p) {
          const double t = -1.0 + p * h;
          const double w = (p == 0 || p == panels) ? 1.0 : (p % 2 == 1 ? 4.0 : 2.0);
          sum += w * jacobi_eval(i, 0.0, 0.0, t) * jacobi_eval(j, 0.0, 0.0, t);
        }
        sum *= h / 3.0;
        const double want = i == j ? 2.0 / (2 * i + 1) : 0.0;
        CHECK(std::abs(sum - want) < 1e-12);
      }
    }
  }

  TEST_CASE("surface_area") {
    CHECK(surface_area(1) == 2.0);
    CHECK(surface_area(2) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-15));
    CHECK(surface_area(3) == doctest::Approx(4 * std::numbers::pi).epsilon(1e-15));
    CHECK(surface_area(4) == doctest::Approx(2 * std::numbers::pi * std::numbers::pi).epsilon(1e-15));
    for (int d = 1; d < 20; ++d) {
      CHECK(rel_err(surface_area(d), 2 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d)) < 1e-14);
    }
    CHECK_THROWS_AS(surface_area(0), ParameterError);
  }
}
