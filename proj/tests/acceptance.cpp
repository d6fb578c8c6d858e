// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

#include "cli_io.hpp"
#include "critsphere/conformal_geometry.hpp"
#include "critsphere/feasibility.hpp"
#include "critsphere/fractional_operator.hpp"
#include "critsphere/ode_oracle.hpp"
#include "critsphere/solver.hpp"
#include "critsphere/special_functions.hpp"
#include "critsphere/variational.hpp"

using namespace critsphere;
using testing_support::rel_err;

namespace {

struct Verdict {
  bool passed = true;
  std::string detail;
};

// Converged solutions gathered by criteria 5 and 6 for the resolution check.
struct Collected {
  SpectralProfile profile;
  int max_modes;
  int quad_count;
  double tol;
  std::string label;
};
std::vector<Collected> collected;

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

// Closed-form ground-state values for the constant profile.
double constant_dirichlet(const ProblemParams& p) {
  const double lambda0 = eigenvalue(p, 0);
  return std::pow(lambda0, p.q / (p.q - 2.0)) * surface_area(p.n + 1);
}

Verdict eigenvalue_closed_forms() {
  constexpr double kTol = 1e-11;
  double worst = 0.0;
  for (int n : {3, 4, 5}) {
    const auto p = make_params(n, 1.0);
    for (int l = 0; l <= 50; ++l) {
      const double a = 0.5 * n + l;
      worst = std::max(worst, rel_err(eigenvalue(p, l), a * (a - 1.0)));
    }
  }
  const auto half = make_params(3, 0.5);
  for (int l = 0; l <= 50; ++l) worst = std::max(worst, rel_err(eigenvalue(half, l), l + 1.0));
  return {worst <= kTol, fmt("max relative error %.3e (tol %.0e)", worst, kTol)};
}

Verdict constant_identity() {
  constexpr double kResidualTol = 1e-11;
  constexpr double kEnergyTol = 1e-10;
  Verdict v;
  for (auto [n, s] : {std::pair{3, 1.0}, {3, 0.5}, {3, 1.25}, {4, 1.0}, {5, 2.0}}) {
    const auto p = make_params(n, s);
    const Discretization disc(p, 7, 64);
    const double area = surface_area(n + 1);
    const double w0 = std::pow(eigenvalue(p, 0), 1.0 / (p.q - 2.0));
    Eigen::VectorXd c = Eigen::VectorXd::Zero(disc.mode_count());
    c(0) = w0 * std::sqrt(area);  // Y_0 = |S^n|^{-1/2}
    const double res = residual_dual(disc, c);
    const double want = (0.5 - 1.0 / p.q) * constant_dirichlet(p);
    const double err = rel_err(energy(disc, c), want);
    const bool ok = res <= kResidualTol && err <= kEnergyTol;
    v.passed = v.passed && ok;
    v.detail += fmt("(%d,%g) residual %.2e energy %.10f rel %.1e; ", n, s, res, want, err);
    if (n == 3 && s == 0.5) {
      const double pi_sq = std::numbers::pi * std::numbers::pi / 3.0;
      v.passed = v.passed && rel_err(want, pi_sq) <= kEnergyTol;
    }
  }
  return v;
}

Verdict lq_isometry() {
  constexpr double kTol = 1e-6;
  double worst = 0.0;
  for (double s : {1.0, 1.25}) {
    const auto p = make_params(3, s);
    const InvariantBasis basis(p, 5, 64);
    for (int trial = 0; trial < 20; ++trial) {
      const SpectralProfile w{p, Sector::full, testing_support::random_profile(6, 6)};
      const double sphere = lq_norm_sphere(basis, w, p.q);
      const double flat = lq_norm_euclidean(w, basis, p.q);
      worst = std::max(worst, rel_err(flat, sphere));
    }
  }
  return {worst <= kTol, fmt("40 profiles, max relative gap %.3e (tol %.0e)", worst, kTol)};
}

Verdict gradient_check() {
  constexpr double kTol = 1e-6;
  constexpr double kStep = 1e-5;
  double worst = 0.0;
  const std::pair<int, double> cases[] = {{3, 1.0}, {3, 1.25}, {4, 0.8}, {5, 2.0}, {6, 1.5}};
  for (int pair = 0; pair < 50; ++pair) {
    const auto [n, s] = cases[pair % 5];
    const Discretization disc(make_params(n, s), 11, 96);
    const Eigen::VectorXd w = 0.3 * testing_support::random_profile(6, 12);
    const Eigen::VectorXd d = testing_support::random_profile(8, 12);
    const double fd = (energy(disc, Eigen::VectorXd(w + kStep * d)) - energy(disc, Eigen::VectorXd(w - kStep * d))) /
                      (2.0 * kStep);
    const double exact = residual(disc, w).dot(d);
    worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
  }
  return {worst <= kTol, fmt("50 pairs, max relative mismatch %.3e (tol %.0e)", worst, kTol)};
}

Verdict sign_changing_solution() {
  constexpr double kResidualTol = 1e-9;
  constexpr double kFullTol = 1e-8;
  constexpr double kOracleTol = 1e-5;
  const auto p = make_params(3, 1.0);
  SolverConfig config;
  config.sector = Sector::odd;
  const Discretization disc = make_discretization(p, config);
  const Solution sol = solve(disc, config);
  const double full = residual_dual(disc, sol.profile.coefficients);
  const OracleComparison oracle = compare_with_ode(disc.basis(), sol.profile, 8000);
  const bool ok = sol.converged && sol.residual_dual <= kResidualTol && sol.nodal_count >= 1 && full <= kFullTol &&
                  oracle.ode.converged && oracle.sup_difference <= kOracleTol;
  if (sol.converged) collected.push_back({sol.profile, config.max_modes, config.quad_count, config.tol, "odd s=1"});
  return {ok, fmt("residual %.2e, nodal %d, full residual %.2e, dirichlet %.10f, ode sup-diff %.2e", sol.residual_dual,
                  sol.nodal_count, full, sol.dirichlet, oracle.sup_difference)};
}

Verdict monotone_sequence() {
  constexpr double kGroundTol = 1e-8;
  constexpr double kDistinct = 1e-3;
  Verdict v;
  for (auto [s, modes] : {std::pair{1.0, 160}, {1.25, 224}}) {
    const auto p = make_params(3, s);
    SolverConfig config;
    config.max_modes = modes;
    config.quad_count = 4 * modes;
    const SequenceResult seq = solve_sequence(p, config, 3);
    bool ok = seq.solutions.size() >= 3;
    for (std::size_t i = 0; i < seq.solutions.size(); ++i) {
      const Solution& sol = seq.solutions[i];
      ok = ok && sol.converged && sol.residual_dual <= config.tol;
      if (i > 0) {
        ok = ok && sol.dirichlet > seq.solutions[i - 1].dirichlet;
        ok = ok && profile_distance(sol.profile.coefficients, seq.solutions[i - 1].profile.coefficients) > kDistinct;
      }
      if (sol.converged) {
        collected.push_back(
            {sol.profile, config.max_modes, config.quad_count, config.tol, fmt("sequence s=%g #%zu", s, i + 1)});
      }
    }
    double ground_err = 1.0;
    if (!seq.solutions.empty()) ground_err = rel_err(seq.solutions.front().dirichlet, constant_dirichlet(p));
    ok = ok && ground_err <= kGroundTol;
    v.passed = v.passed && ok;
    v.detail += fmt("s=%g: %zu solutions, dirichlet", s, seq.solutions.size());
    for (const auto& sol : seq.solutions) v.detail += fmt(" %.7f", sol.dirichlet);
    v.detail += fmt(", ground rel err %.1e; ", ground_err);
  }
  return v;
}

Verdict feasibility_table() {
  Verdict v;
  int cells = 0;
  for (int n = 3; n <= 8; ++n) {
    for (double s : {0.5, 1.0, 1.25, 1.6, 2.0, 2.4}) {
      const FeasibilityReport r = check(n, s);
      const bool a = 2.0 <= s && s < 0.5 * n;
      const bool b = 1.0 <= s && s < 2.0 * n / (n + 1.0);
      const bool c = n % 2 == 0 && 1.0 <= s && s < 0.5 * n;
      const bool ok = r.clause_a == a && r.clause_b == b && r.clause_c == c && r.covered == (a || b || c);
      if (!ok) v.detail += fmt("mismatch at (%d,%g); ", n, s);
      v.passed = v.passed && ok;
      ++cells;
    }
  }
  const FeasibilityReport odd = check(4, 1.7);
  v.passed = v.passed && odd.discrepancy;
  v.detail += fmt("%d grid cells checked, (4,1.7) discrepancy=%s", cells, odd.discrepancy ? "true" : "false");
  return v;
}

Verdict resolution_robustness() {
  Verdict v;
  if (collected.empty()) return {false, "no converged solutions to re-verify"};
  double worst_ratio = 0.0;
  for (const auto& item : collected) {
    // Doubled modes and doubled quadrature.
    const Discretization fine(item.profile.params, 2 * item.max_modes - 1, 2 * item.quad_count);
    const double res = residual_dual(fine, item.profile.coefficients);
    worst_ratio = std::max(worst_ratio, res / item.tol);
    if (res > 10.0 * item.tol) {
      v.passed = false;
      v.detail += fmt("%s residual %.2e; ", item.label.c_str(), res);
    }
  }
  v.detail += fmt("%zu solutions, worst residual / tol = %.3f (limit 10)", collected.size(), worst_ratio);
  return v;
}

Verdict determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "critsphere_acceptance";
  std::filesystem::create_directories(dir);
  std::vector<std::string> contents;
  for (int run = 0; run < 3; ++run) {
    const std::string path = (dir / ("solve_" + std::to_string(run) + ".json")).string();
    const char* argv[] = {"critsphere", "solve", "--n", "3", "--s", "1.25", "--sector", "odd", "--out", path.c_str()};
    std::ostringstream out;
    std::ostringstream err;
    if (cli::run(10, argv, out, err) != cli::kExitOk) return {false, "solve failed: " + err.str()};
    std::ifstream file(path, std::ios::binary);
    std::ostringstream text;
    text << file.rdbuf();
    contents.push_back(text.str());
  }
  std::filesystem::remove_all(dir);
  const bool same = contents[0] == contents[1] && contents[1] == contents[2] && !contents[0].empty();
  return {same, fmt("3 runs, %zu bytes each, identical=%s", contents[0].size(), same ? "true" : "false")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::function<Verdict()> body;
    double limit_seconds;  // <= 0 means no runtime bound
  };
  const Criterion criteria[] = {
      {1, eigenvalue_closed_forms, 1.0}, {2, constant_identity, 1.0},     {3, lq_isometry, 30.0},
      {4, gradient_check, 5.0},          {5, sign_changing_solution, 60.0}, {6, monotone_sequence, 600.0},
      {7, feasibility_table, 1.0},       {8, resolution_robustness, 0.0}, {9, determinism, 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0.0 && seconds >= c.limit_seconds) {
      v.passed = false;
      v.detail += fmt(" [over runtime limit %.0f s]", c.limit_seconds);
    }
    if (!v.passed) ++failures;
    std::printf("criterion %d: %s (%.2f s) %s\n", c.id, v.passed ? "PASS" : "FAIL", seconds, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
