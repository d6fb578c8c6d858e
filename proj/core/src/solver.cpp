#include "critsphere/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <tuple>

#include <Eigen/LU>

#include "critsphere/errors.hpp"

namespace critsphere {

void SolverConfig::validate() const {
  if (max_modes < 1) throw ParameterError("max_modes must be positive");
  if (quad_count < 4 * max_modes) {
    throw ParameterError("quad_count " + std::to_string(quad_count) + " is below 4*max_modes = " +
                         std::to_string(4 * max_modes));
  }
  if (!(tol > 0.0)) throw ParameterError("tol must be positive");
  if (max_iter < 0) throw ParameterError("max_iter must be non-negative");
  if (!(step > 0.0) || step > 1.0) throw ParameterError("step tau must lie in (0, 1]");
  if (!(newton_switch > 0.0)) throw ParameterError("newton_switch must be positive");
  for (const auto& [index, amplitude] : ansatz) {
    if (index < 0 || index >= max_modes) {
      throw ParameterError("ansatz index " + std::to_string(index) + " outside 0.." +
                           std::to_string(max_modes - 1));
    }
    if (!std::isfinite(amplitude)) throw ParameterError("ansatz amplitude must be finite");
  }
}

Discretization make_discretization(const ProblemParams& params, const SolverConfig& config) {
  config.validate();
  return Discretization(params, config.max_modes - 1, config.quad_count);
}

Eigen::VectorXd build_ansatz(const Discretization& disc, const SolverConfig& config) {
  if (config.sector != Sector::full && !disc.params().symmetric_blocks()) {
    throw ParameterError("parity sectors require equal block sizes (odd n)");
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(disc.mode_count());
  if (config.ansatz.empty()) {
    c(config.sector == Sector::odd ? 1 : 0) = 1.0;
  } else {
    for (const auto& [index, amplitude] : config.ansatz) {
      if (index < 0 || index >= disc.mode_count()) throw ParameterError("ansatz index out of range");
      c(index) += amplitude;
    }
  }
  project_to_sector(config.sector, c);
  if (c.isZero(0.0)) {
    throw ParameterError("ansatz has no component in the " + std::string(to_string(config.sector)) +
                         " sector");
  }
  return c;
}

Solution summarize(const Discretization& disc, SpectralProfile profile, double tol) {
  Solution out;
  const Eigen::VectorXd c = disc.pad(profile.coefficients);
  out.dirichlet = disc.op().dirichlet_form(c);
  out.energy = energy(disc, c);
  out.residual_dual = residual_dual(disc, c);
  out.nodal_count = nodal_count(disc.basis(), c);
  out.converged = out.residual_dual <= tol;
  profile.coefficients = c;
  out.profile = std::move(profile);
  return out;
}

namespace {

void require_finite(const Eigen::VectorXd& c, const char* where) {
  if (!c.allFinite()) throw NumericError(std::string(where) + ": iterate became non-finite");
}

}  // namespace

Solution iterate(const Discretization& disc, const SolverConfig& config) {
  config.validate();
  const IntertwiningOperator& op = disc.op();
  Eigen::VectorXd c = build_ansatz(disc, config);
  c *= nehari_scale(disc, c);

  Eigen::VectorXd best = c;
  double best_dual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  for (int it = 0;; ++it) {
    Eigen::VectorXd g = nonlinear_term(disc, c);
    const double dual = op.dual_norm(op.apply(c) - g);
    if (!std::isfinite(dual)) throw NumericError("iterate: residual became non-finite");
    if (dual < best_dual) {
      best_dual = dual;
      best = c;
      iterations = it;
    }
    if (dual <= config.tol || it >= config.max_iter) break;
    project_to_sector(config.sector, g);
    c += config.step * (op.apply_inverse(g) - c);
    require_finite(c, "iterate");
    c *= nehari_scale(disc, c);
    require_finite(c, "iterate");
  }
  Solution out = summarize(disc, {disc.params(), config.sector, best}, config.tol);
  out.iterations = iterations;
  if (!out.converged) {
    out.note = "gradient iteration stopped at max_iter with residual " + std::to_string(best_dual);
  }
  return out;
}

namespace {

std::vector<Eigen::Index> sector_indices(Sector sector, int modes) {
  std::vector<Eigen::Index> idx;
  for (int j = 0; j < modes; ++j) {
    if (sector_allows(sector, j)) idx.push_back(j);
  }
  return idx;
}

// Rows of the basis value matrix for the given indices.
Eigen::MatrixXd select_rows(const Eigen::MatrixXd& values, const std::vector<Eigen::Index>& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), values.cols());
  for (std::size_t r = 0; r < idx.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = values.row(idx[r]);
  return out;
}

}  // namespace

Solution newton_refine(const Discretization& disc, const SpectralProfile& w, const NewtonOptions& options) {
  w.validate();
  const double q = disc.params().q;
  const IntertwiningOperator& op = disc.op();
  const InvariantBasis& basis = disc.basis();
  const auto idx = sector_indices(w.sector, disc.mode_count());
  const Eigen::MatrixXd rows = select_rows(basis.values(), idx);
  const auto dim = static_cast<Eigen::Index>(idx.size());

  Eigen::VectorXd c = disc.pad(w.coefficients);
  Eigen::VectorXd r = residual(disc, c);
  double dual = op.dual_norm(r);
  int steps = 0;
  std::string note;
  // Polish below tol while Newton still makes progress.
  const double polish = options.tol * 1e-3;
  while (dual > polish && steps < options.max_steps) {
    const Eigen::VectorXd values = basis.synthesize(c);
    const Eigen::VectorXd weight =
        ((q - 1.0) * values.array().abs().pow(q - 2.0)).matrix().cwiseProduct(basis.sphere_weights());
    Eigen::MatrixXd jac = -(rows * weight.asDiagonal() * rows.transpose());
    Eigen::VectorXd rhs(dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
      jac(a, a) += op.eigenvalues()(idx[a]);
      rhs(a) = -r(idx[a]);
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    const double rcond = lu.rcond();
    if (!(rcond * options.max_condition >= 1.0)) {
      if (dual <= options.tol) break;
      throw RefinementError("newton_refine: Galerkin matrix condition estimate " +
                            std::to_string(1.0 / rcond) + " exceeds limit");
    }
    const Eigen::VectorXd delta_s = lu.solve(rhs);
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(c.size());
    for (Eigen::Index a = 0; a < dim; ++a) delta(idx[a]) = delta_s(a);

    double lambda = 1.0;
    bool accepted = false;
    Eigen::VectorXd trial;
    Eigen::VectorXd trial_r;
    double trial_dual = dual;
    for (int halving = 0; halving < 30; ++halving) {
      trial = c + lambda * delta;
      require_finite(trial, "newton_refine");
      trial_r = residual(disc, trial);
      trial_dual = op.dual_norm(trial_r);
      if (trial_dual < dual) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      if (dual > options.tol) note = "newton line search stalled";
      break;
    }
    c = std::move(trial);
    r = std::move(trial_r);
    dual = trial_dual;
    ++steps;
    if (dual <= options.tol && lambda < 1.0) break;
  }
  Solution out = summarize(disc, {w.params, w.sector, c}, options.tol);
  out.newton_steps = steps;
  out.note = note;
  return out;
}

Solution solve(const Discretization& disc, const SolverConfig& config) {
  SolverConfig gradient = config;
  gradient.tol = std::max(config.newton_switch, config.tol);
  Solution coarse = iterate(disc, gradient);
  NewtonOptions newton;
  newton.tol = config.tol;
  try {
    Solution refined = newton_refine(disc, coarse.profile, newton);
    refined.iterations = coarse.iterations;
    if (refined.converged || refined.residual_dual < coarse.residual_dual) return refined;
  } catch (const RefinementError&) {
    // Keep the pre-Newton iterate and let the gradient phase finish the job.
  }
  SolverConfig rest = config;
  rest.ansatz.clear();
  for (Eigen::Index j = 0; j < coarse.profile.coefficients.size(); ++j) {
    if (coarse.profile.coefficients(j) != 0.0) rest.ansatz.emplace_back(static_cast<int>(j), coarse.profile.coefficients(j));
  }
  rest.max_iter = std::max(0, config.max_iter - coarse.iterations);
  Solution finished = iterate(disc, rest);
  finished.iterations += coarse.iterations;
  return finished;
}

namespace {

// Peak of J over span(basis) near a given coefficient vector, by Newton ascent.
class PeakFinder {
 public:
  PeakFinder(const Discretization& disc, const std::vector<Eigen::VectorXd>& basis)
      : disc_(disc), dim_(static_cast<Eigen::Index>(basis.size())) {
    const auto modes = disc.mode_count();
    coeffs_.resize(modes, dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) coeffs_.col(i) = basis[i];
    nodal_ = disc.basis().values().transpose() * coeffs_;  // nodes x dim
    a_gram_.resize(dim_, dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) {
      for (Eigen::Index j = 0; j < dim_; ++j) a_gram_(i, j) = disc.op().inner(basis[i], basis[j]);
    }
  }

  [[nodiscard]] double value(const Eigen::VectorXd& a) const {
    const double q = disc_.params().q;
    const Eigen::VectorXd w = nodal_ * a;
    const double lq = disc_.basis().sphere_weights().dot(w.array().abs().pow(q).matrix());
    return 0.5 * a.dot(a_gram_ * a) - lq / q;
  }

  // Returns the maximizer; `a` is the starting point.
  [[nodiscard]] Eigen::VectorXd maximize(Eigen::VectorXd a) const {
    const double q = disc_.params().q;
    const Eigen::VectorXd& sw = disc_.basis().sphere_weights();
    double current = value(a);
    for (int iter = 0; iter < 200; ++iter) {
      const Eigen::VectorXd w = nodal_ * a;
      const Eigen::ArrayXd absw = w.array().abs();
      const Eigen::VectorXd f = (absw.pow(q - 2.0) * w.array() * sw.array()).matrix();
      const Eigen::VectorXd grad = a_gram_ * a - nodal_.transpose() * f;
      const Eigen::VectorXd curv = ((q - 1.0) * absw.pow(q - 2.0) * sw.array()).matrix();
      const Eigen::MatrixXd hess = a_gram_ - nodal_.transpose() * curv.asDiagonal() * nodal_;
      if (grad.norm() <= 1e-13 * std::max(1.0, a_gram_.norm() * a.norm())) break;

      Eigen::VectorXd dir;
      const Eigen::LLT<Eigen::MatrixXd> llt(-hess);
      if (llt.info() == Eigen::Success) {
        dir = llt.solve(grad);
      } else {
        dir = grad / std::max(1.0, hess.norm());
      }
      double lambda = 1.0;
      bool moved = false;
      for (int halving = 0; halving < 40; ++halving) {
        const Eigen::VectorXd trial = a + lambda * dir;
        const double v = value(trial);
        if (v > current) {
          a = trial;
          current = v;
          moved = true;
          break;
        }
        lambda *= 0.5;
      }
      if (!moved) break;
    }
    return a;
  }

  [[nodiscard]] Eigen::VectorXd combine(const Eigen::VectorXd& a) const { return coeffs_ * a; }

 private:
  const Discretization& disc_;
  Eigen::Index dim_;
  Eigen::MatrixXd coeffs_;
  Eigen::MatrixXd nodal_;
  Eigen::MatrixXd a_gram_;
};

}  // namespace

Solution minimax(const Discretization& disc, const std::vector<SpectralProfile>& support,
                 const Eigen::VectorXd& direction, Sector sector, const MinimaxOptions& options) {
  if (sector != Sector::full && !disc.params().symmetric_blocks()) {
    throw ParameterError("parity sectors require equal block sizes (odd n)");
  }
  const IntertwiningOperator& op = disc.op();

  // A_s-orthonormal basis of the support, inside the sector.
  std::vector<Eigen::VectorXd> frame;
  for (const SpectralProfile& s : support) {
    Eigen::VectorXd u = disc.pad(s.coefficients);
    project_to_sector(sector, u);
    const double original = std::sqrt(op.dirichlet_form(u));
    for (const auto& b : frame) u -= op.inner(u, b) * b;
    const double norm = std::sqrt(op.dirichlet_form(u));
    if (norm > 1e-8 * std::max(original, 1e-300)) frame.push_back(u / norm);
  }
  auto normalize_direction = [&](Eigen::VectorXd v) {
    project_to_sector(sector, v);
    for (const auto& b : frame) v -= op.inner(v, b) * b;
    const double norm = std::sqrt(op.dirichlet_form(v));
    if (!(norm > 0.0)) throw ParameterError("minimax: direction lies in the support space");
    return Eigen::VectorXd(v / norm);
  };

  Eigen::VectorXd v = normalize_direction(disc.pad(direction));
  auto peak_of = [&](const Eigen::VectorXd& dir, const Eigen::VectorXd& start) {
    std::vector<Eigen::VectorXd> span{dir};
    span.insert(span.end(), frame.begin(), frame.end());
    const PeakFinder finder(disc, span);
    Eigen::VectorXd a = finder.maximize(start);
    return std::make_tuple(a, finder.combine(a), finder.value(a));
  };

  Eigen::VectorXd a0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(frame.size()) + 1);
  a0(0) = nehari_scale(disc, v);
  auto [a, peak, peak_value] = peak_of(v, a0);

  double step = options.initial_step;
  int iterations = 0;
  double grad_norm = std::numeric_limits<double>::infinity();
  std::string note;
  for (; iterations < options.max_iter; ++iterations) {
    Eigen::VectorXd r = residual(disc, peak);
    project_to_sector(sector, r);
    const Eigen::VectorXd grad = op.apply_inverse(r);
    grad_norm = std::sqrt(op.dirichlet_form(grad));
    if (!std::isfinite(grad_norm)) throw NumericError("minimax: gradient became non-finite");
    if (grad_norm <= options.tol) break;

    const double sign = a(0) >= 0.0 ? 1.0 : -1.0;
    bool accepted = false;
    while (step >= 1e-10) {
      const Eigen::VectorXd trial_v = normalize_direction(v - step * sign * grad);
      auto [ta, tpeak, tvalue] = peak_of(trial_v, a);
      if (tvalue < peak_value - 1e-4 * step * std::abs(a(0)) * grad_norm * grad_norm) {
        v = trial_v;
        a = ta;
        peak = tpeak;
        peak_value = tvalue;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      note = "minimax descent stalled";
      break;
    }
    step = std::min(1.0, 1.5 * step);
  }

  SpectralProfile start{disc.params(), sector, peak};
  project_to_sector(sector, start.coefficients);
  Solution out;
  try {
    out = newton_refine(disc, start, options.newton);
  } catch (const RefinementError& e) {
    out = summarize(disc, start, options.newton.tol);
    out.note = e.what();
  }
  out.iterations = iterations;
  if (!note.empty()) out.note = out.note.empty() ? note : note + "; " + out.note;
  return out;
}

double profile_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index n = std::max(a.size(), b.size());
  Eigen::VectorXd pa = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd pb = Eigen::VectorXd::Zero(n);
  pa.head(a.size()) = a;
  pb.head(b.size()) = b;
  const double scale = std::max(pa.norm(), pb.norm());
  if (scale == 0.0) return 0.0;
  return std::min((pa - pb).norm(), (pa + pb).norm()) / scale;
}

namespace {

constexpr double kDuplicateDistance = 1e-3;

bool is_duplicate(const std::vector<Solution>& found, const Solution& candidate) {
  return std::any_of(found.begin(), found.end(), [&](const Solution& s) {
    return profile_distance(s.profile.coefficients, candidate.profile.coefficients) < kDuplicateDistance;
  });
}

std::string describe(int rung, Sector sector, const Solution& s, const std::string& verdict) {
  std::ostringstream os;
  os << "rung " << rung << " [" << to_string(sector) << "] residual=" << s.residual_dual
     << " dirichlet=" << s.dirichlet << " nodes=" << s.nodal_count << " -> " << verdict;
  if (!s.note.empty()) os << " (" << s.note << ")";
  return os.str();
}

}  // namespace

SequenceResult solve_sequence(const ProblemParams& params, const SolverConfig& config, int count) {
  if (count < 1) throw ParameterError("solve_sequence: count must be >= 1");
  const Discretization disc = make_discretization(params, config);
  const bool parity = params.symmetric_blocks();
  SequenceResult result;
  std::vector<Solution> found;

  auto consider = [&](int rung, Sector sector, Solution candidate) {
    std::string verdict;
    if (!candidate.converged) {
      verdict = "not converged";
    } else if (candidate.profile.coefficients.norm() < 1e-8) {
      verdict = "trivial";
    } else if (is_duplicate(found, candidate)) {
      verdict = "duplicate";
    } else {
      verdict = "accepted";
      found.push_back(std::move(candidate));
      result.log.push_back(describe(rung, sector, found.back(), verdict));
      return;
    }
    result.log.push_back(describe(rung, sector, candidate, verdict));
  };

  {
    SolverConfig ground = config;
    ground.sector = Sector::full;
    ground.ansatz = {{0, 1.0}};
    try {
      consider(0, Sector::full, solve(disc, ground));
    } catch (const NumericError& e) {
      result.log.push_back(std::string("rung 0 [full] failed: ") + e.what());
    }
  }

  const int max_rung = std::min(disc.mode_count() - 1, count + 6);
  for (int rung = 1; rung <= max_rung && static_cast<int>(found.size()) < count; ++rung) {
    const Sector sector = parity ? (rung % 2 == 1 ? Sector::odd : Sector::even) : Sector::full;
    std::vector<SpectralProfile> support;
    for (const Solution& s : found) {
      Eigen::VectorXd c = s.profile.coefficients;
      project_to_sector(sector, c);
      if (c.norm() > 1e-6 * s.profile.coefficients.norm()) support.push_back({params, sector, c});
    }
    Eigen::VectorXd direction = Eigen::VectorXd::Zero(disc.mode_count());
    direction(rung) = 1.0;
    try {
      Solution candidate;
      if (support.empty()) {
        SolverConfig rung_config = config;
        rung_config.sector = sector;
        rung_config.ansatz = {{rung, 1.0}};
        candidate = solve(disc, rung_config);
      } else {
        MinimaxOptions options;
        options.tol = config.newton_switch;
        options.newton.tol = config.tol;
        candidate = minimax(disc, support, direction, sector, options);
      }
      consider(rung, sector, std::move(candidate));
    } catch (const Error& e) {
      result.log.push_back("rung " + std::to_string(rung) + " [" + std::string(to_string(sector)) +
                           "] failed: " + e.what());
    }
  }

  std::sort(found.begin(), found.end(),
            [](const Solution& x, const Solution& y) { return x.dirichlet < y.dirichlet; });
  for (Solution& s : found) {
    if (!result.solutions.empty()) {
      const double prev = result.solutions.back().dirichlet;
      if (s.dirichlet - prev <= 1e-9 * std::abs(prev)) continue;
    }
    result.solutions.push_back(std::move(s));
    if (static_cast<int>(result.solutions.size()) == count) break;
  }
  result.complete = static_cast<int>(result.solutions.size()) == count;
  return result;
}

ResolutionCheck verify_resolution(const SpectralProfile& profile, int max_modes, int quad_count, double tol) {
  ResolutionCheck out;
  out.max_modes = max_modes + 16;
  out.quad_count = 2 * quad_count;
  const Discretization fine(profile.params, out.max_modes - 1, out.quad_count);
  out.residual_dual = residual_dual(fine, profile.coefficients);
  out.passed = out.residual_dual <= 10.0 * tol;
  return out;
}

}  // namespace critsphere
