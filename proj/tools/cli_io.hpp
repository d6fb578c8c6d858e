#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "critsphere/feasibility.hpp"
#include "critsphere/solver.hpp"

namespace critsphere::cli {

inline constexpr int kFormatVersion = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitNumeric = 3;

/// Self-describing persisted solution. Every field needed to rebuild the
/// discretization is stored alongside the coefficients.
struct SolutionRecord {
  int format_version = kFormatVersion;
  int n = 0;
  double s = 0.0;
  double q = 0.0;
  int k = 0;
  int m = 0;
  std::string sector = "full";
  int max_modes = 0;
  int quad_count = 0;
  double tol = 0.0;
  std::vector<double> coefficients;
  double energy = 0.0;
  double dirichlet = 0.0;
  double residual_dual = 0.0;
  int nodal_count = 0;
  int iterations = 0;
  bool converged = false;

  bool operator==(const SolutionRecord&) const = default;
};

SolutionRecord make_record(const Solution& solution, const SolverConfig& config);

/// JSON text with a fixed field order and 17 significant digits per number.
std::string to_json(const SolutionRecord& record);
/// Throws ParameterError on malformed JSON, missing fields or a foreign format_version.
SolutionRecord from_json(const std::string& text);

void write_record(const std::string& path, const SolutionRecord& record);
SolutionRecord read_record(const std::string& path);

/// Rebuilds the spectral profile of a record; does not validate parity.
SpectralProfile record_profile(const SolutionRecord& record);

/// Parses "j:amp[,j:amp...]". Throws ParameterError on malformed input.
std::vector<std::pair<int, double>> parse_ansatz(const std::string& text);

/// "key = value" lines in a fixed order.
std::string render_feasibility(const FeasibilityReport& report);

/// Full command-line entry point. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace critsphere::cli
