#include "critsphere/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "critsphere/errors.hpp"

namespace critsphere {

bool ExtendedReal::less_than(const ExtendedReal& other) const {
  if (infinite) return false;
  if (other.infinite) return true;
  return value < other.value;
}

std::string ExtendedReal::to_string() const {
  if (infinite) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

int regularity_integer(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw ParameterError("regularity_integer: s must be positive");
  return static_cast<int>(std::floor(s));
}

ExtendedReal compactness_bound(int n, int d, int m_reg) {
  if (d < 0 || d >= n) throw ParameterError("compactness_bound: orbit dimension must satisfy 0 <= d < n");
  if (m_reg < 0) throw ParameterError("compactness_bound: negative regularity integer");
  const int denom = n - d - 2 * m_reg;
  if (denom <= 0) return ExtendedReal::infinity();
  return ExtendedReal::finite(2.0 * (n - d) / denom);
}

ExtendedReal critical_exponent(int n, double s) {
  const double denom = n - 2.0 * s;
  if (denom <= 0.0) return ExtendedReal::infinity();
  return ExtendedReal::finite(2.0 * n / denom);
}

FeasibilityReport check(int n, double s) {
  if (n < 3) throw ParameterError("feasibility: dimension n must be >= 3");
  if (!(s > 0.0) || !std::isfinite(s)) throw ParameterError("feasibility: order s must be positive and finite");

  FeasibilityReport r;
  r.n = n;
  r.s = s;
  r.q = critical_exponent(n, s);
  const double half = 0.5 * n;
  r.clause_a = s >= 2.0 && s < half;
  r.clause_b = s >= 1.0 && s < 2.0 * n / (n + 1.0);
  r.clause_c = n % 2 == 0 && s >= 1.0 && s < half;
  r.covered = r.clause_a || r.clause_b || r.clause_c;

  const int k = (n + 1) / 2;
  const int m = n + 1 - k;
  r.d_paper = n / 2;
  r.d_computed = std::min(k, m) - 1;
  r.m_reg = regularity_integer(s);
  r.rhs_paper = compactness_bound(n, r.d_paper, r.m_reg);
  r.rhs_computed = compactness_bound(n, r.d_computed, r.m_reg);
  r.ineq_paper = r.q.less_than(r.rhs_paper);
  r.ineq_computed = r.q.less_than(r.rhs_computed);
  r.discrepancy = r.ineq_paper != r.ineq_computed;
  return r;
}

}  // namespace critsphere
