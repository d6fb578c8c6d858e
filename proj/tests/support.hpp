#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace testing_support {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Fixed-seed generator so every property run sees the same cases.
inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(0x5eedULL);
  return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

// Coefficients decaying like 1/(j+1)^2 with a positive mean mode, padded to `size`.
inline Eigen::VectorXd random_profile(int modes, Eigen::Index size) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(size);
  for (int j = 0; j < modes; ++j) c(j) = uniform(-1.0, 1.0) / ((j + 1.0) * (j + 1.0));
  c(0) = uniform(0.5, 1.5);
  return c;
}

}  // namespace testing_support
