#pragma once

#include <string>

namespace critsphere {

/// A real number or +infinity. Infinity is carried as a flag, not a sentinel value.
struct ExtendedReal {
  bool infinite = false;
  double value = 0.0;

  static ExtendedReal finite(double v) { return {false, v}; }
  static ExtendedReal infinity() { return {true, 0.0}; }

  [[nodiscard]] bool less_than(const ExtendedReal& other) const;
  /// "inf" for infinity, otherwise the value with 17 significant digits.
  [[nodiscard]] std::string to_string() const;
};

/// Hypothesis case split and orbit-dimension compactness arithmetic for one (n, s).
struct FeasibilityReport {
  int n = 0;
  double s = 0.0;
  ExtendedReal q;
  bool clause_a = false;  // 2 <= s < n/2
  bool clause_b = false;  // 1 <= s < 2n/(n+1)
  bool clause_c = false;  // n even and 1 <= s < n/2
  bool covered = false;
  int d_paper = 0;     // floor(n/2)
  int d_computed = 0;  // min(k, m) - 1 for the k + m = n + 1 blocks
  int m_reg = 0;
  ExtendedReal rhs_paper;
  ExtendedReal rhs_computed;
  bool ineq_paper = false;
  bool ineq_computed = false;
  bool discrepancy = false;
};

/// floor(s), or s itself when s is an integer. Throws ParameterError unless s > 0.
int regularity_integer(double s);

/// 2(n-d)/(n-d-2 m_reg) when the denominator is positive, +infinity otherwise.
/// Throws ParameterError unless 0 <= d < n and m_reg >= 0.
ExtendedReal compactness_bound(int n, int d, int m_reg);

/// Critical exponent 2n/(n-2s), +infinity once s >= n/2.
ExtendedReal critical_exponent(int n, double s);

/// Evaluates every clause and both orbit-dimension conventions.
/// Orders s >= n/2 are accepted and reported as uncovered with q = +infinity;
/// throws ParameterError for n < 3 or s <= 0.
FeasibilityReport check(int n, double s);

}  // namespace critsphere
