#include "cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "critsphere/conformal_geometry.hpp"
#include "critsphere/errors.hpp"
#include "critsphere/ode_oracle.hpp"

namespace critsphere::cli {
namespace {

constexpr double kOracleTolerance = 1e-5;
constexpr int kOracleCells = 8000;

std::string num(double v) {
  if (!std::isfinite(v)) throw NumericError("refusing to serialize a non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const char* boolean(bool b) { return b ? "true" : "false"; }

template <typename T>
T field(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw ParameterError(std::string("solution record lacks field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParameterError(std::string("solution record field '") + key + "' has the wrong type");
  }
}

// Options shared by solve and sequence.
struct SolveOptions {
  int n = 0;
  double s = 0.0;
  int modes = 64;
  int quad = 256;
  double tol = 1e-9;
  int max_iter = 20000;
  double tau = 0.5;
  std::string sector = "full";
  std::string ansatz;
};

void add_solve_options(CLI::App* cmd, SolveOptions& o, bool with_start) {
  cmd->add_option("--n", o.n, "dimension n >= 3")->required();
  cmd->add_option("--s", o.s, "order s in (0, n/2)")->required();
  cmd->add_option("--modes", o.modes, "number of invariant basis functions")->capture_default_str();
  cmd->add_option("--quad", o.quad, "Gauss-Jacobi nodes (default max(256, 4 modes))");
  cmd->add_option("--tol", o.tol, "dual-norm residual target")->capture_default_str();
  cmd->add_option("--max-iter", o.max_iter, "gradient iteration cap")->capture_default_str();
  cmd->add_option("--tau", o.tau, "relaxation step in (0, 1]")->capture_default_str();
  if (with_start) {
    cmd->add_option("--sector", o.sector, "full, odd or even")->capture_default_str();
    cmd->add_option("--ansatz", o.ansatz, "initial guess j:amp[,j:amp...]");
  }
}

SolverConfig to_config(const SolveOptions& o, bool quad_given) {
  SolverConfig c;
  c.max_modes = o.modes;
  c.quad_count = quad_given ? o.quad : std::max(o.quad, 4 * o.modes);
  c.tol = o.tol;
  c.max_iter = o.max_iter;
  c.step = o.tau;
  c.sector = parse_sector(o.sector);
  c.ansatz = parse_ansatz(o.ansatz);
  c.validate();
  return c;
}

void print_summary(std::ostream& out, const Solution& sol) {
  out << "converged = " << boolean(sol.converged) << '\n'
      << "sector = " << to_string(sol.profile.sector) << '\n'
      << "residual_dual = " << num(sol.residual_dual) << '\n'
      << "energy = " << num(sol.energy) << '\n'
      << "dirichlet = " << num(sol.dirichlet) << '\n'
      << "nodal_count = " << sol.nodal_count << '\n'
      << "iterations = " << sol.iterations << '\n'
      << "newton_steps = " << sol.newton_steps << '\n';
  if (!sol.note.empty()) out << "note = " << sol.note << '\n';
}

int cmd_feasibility(int n, double s, std::ostream& out) {
  out << render_feasibility(check(n, s));
  return kExitOk;
}

int cmd_spectrum(int n, double s, int degrees, std::ostream& out) {
  if (degrees < 1) throw ParameterError("--degrees must be at least 1");
  const ProblemParams params = make_params(n, s);
  out << "l,lambda\n";
  for (int l = 0; l < degrees; ++l) out << l << ',' << num(eigenvalue(params, l)) << '\n';
  return kExitOk;
}

int cmd_solve(const SolveOptions& o, bool quad_given, const std::string& path, std::ostream& out) {
  const ProblemParams params = make_params(o.n, o.s);
  const SolverConfig config = to_config(o, quad_given);
  const Discretization disc = make_discretization(params, config);
  const Solution sol = solve(disc, config);
  const SolutionRecord record = make_record(sol, config);
  if (path.empty()) {
    out << to_json(record);
  } else {
    write_record(path, record);
    print_summary(out, sol);
    out << "written = " << path << '\n';
  }
  return kExitOk;
}

int cmd_sequence(const SolveOptions& o, bool quad_given, int count, const std::string& prefix, std::ostream& out) {
  if (count < 1) throw ParameterError("--count must be at least 1");
  const ProblemParams params = make_params(o.n, o.s);
  const SolverConfig config = to_config(o, quad_given);
  const SequenceResult seq = solve_sequence(params, config, count);
  for (const auto& line : seq.log) out << "# " << line << '\n';
  out << "k,dirichlet,energy,nodal_count,residual_dual\n";
  for (std::size_t i = 0; i < seq.solutions.size(); ++i) {
    const Solution& sol = seq.solutions[i];
    out << i + 1 << ',' << short_num(sol.dirichlet) << ',' << short_num(sol.energy) << ',' << sol.nodal_count
        << ',' << short_num(sol.residual_dual) << '\n';
    if (!prefix.empty()) write_record(prefix + "_" + std::to_string(i + 1) + ".json", make_record(sol, config));
  }
  out << "complete = " << boolean(seq.complete) << " (" << seq.solutions.size() << " of " << count << ")\n";
  return kExitOk;
}

int cmd_verify(const std::string& path, std::ostream& out) {
  const SolutionRecord record = read_record(path);
  const SpectralProfile profile = record_profile(record);
  try {
    profile.validate();
  } catch (const ParameterError& e) {
    out << "profile = invalid (" << e.what() << ")\nverdict = FAIL\n";
    return kExitOk;
  }
  if (static_cast<int>(profile.coefficients.size()) > record.max_modes) {
    out << "profile = invalid (more coefficients than max_modes)\nverdict = FAIL\n";
    return kExitOk;
  }
  const ResolutionCheck check = verify_resolution(profile, record.max_modes, record.quad_count, record.tol);
  out << "check_modes = " << check.max_modes << '\n'
      << "check_quad = " << check.quad_count << '\n'
      << "residual_dual = " << num(check.residual_dual) << '\n'
      << "threshold = " << num(10.0 * record.tol) << '\n'
      << "resolution = " << (check.passed ? "PASS" : "FAIL") << '\n';
  bool pass = check.passed;
  if (profile.params.s == 1.0) {
    const InvariantBasis basis(profile.params, record.max_modes - 1, record.quad_count);
    const OracleComparison cmp = compare_with_ode(basis, profile, kOracleCells);
    const bool ok = cmp.ode.converged && cmp.sup_difference <= kOracleTolerance;
    out << "oracle_cells = " << kOracleCells << '\n'
        << "oracle_converged = " << boolean(cmp.ode.converged) << '\n'
        << "oracle_sup_diff = " << num(cmp.sup_difference) << '\n'
        << "oracle = " << (ok ? "PASS" : "FAIL") << '\n';
    pass = pass && ok;
  }
  out << "verdict = " << (pass ? "PASS" : "FAIL") << '\n';
  return kExitOk;
}

int cmd_pullback(const std::string& path, double r1max, double r2max, int grid, const std::string& csv,
                 std::ostream& out) {
  if (grid < 1) throw ParameterError("--grid must be at least 1");
  if (!(r1max >= 0.0) || !(r2max >= 0.0) || !std::isfinite(r1max) || !std::isfinite(r2max)) {
    throw ParameterError("--r1max and --r2max must be finite and non-negative");
  }
  const SolutionRecord record = read_record(path);
  const SpectralProfile profile = record_profile(record);
  const int max_index = std::max(0, static_cast<int>(profile.coefficients.size()) - 1);
  const InvariantBasis basis(profile.params, max_index, std::max(record.quad_count, 2 * (max_index + 1)));

  std::ostringstream body;
  body << "r1,r2,v\n";
  auto coord = [grid](double rmax, int i) { return grid == 1 ? 0.0 : rmax * i / (grid - 1); };
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const BiradialPoint p{coord(r1max, i), coord(r2max, j)};
      body << num(p.r1) << ',' << num(p.r2) << ',' << num(pullback(profile, basis, p)) << '\n';
    }
  }
  if (csv.empty()) {
    out << body.str();
  } else {
    std::ofstream file(csv, std::ios::binary);
    if (!file) throw ParameterError("cannot open " + csv + " for writing");
    file << body.str();
    if (!file) throw ParameterError("failed writing " + csv);
    out << "written = " << csv << " (" << grid * grid << " rows)\n";
  }
  return kExitOk;
}

}  // namespace

SolutionRecord make_record(const Solution& solution, const SolverConfig& config) {
  const ProblemParams& p = solution.profile.params;
  SolutionRecord r;
  r.n = p.n;
  r.s = p.s;
  r.q = p.q;
  r.k = p.k;
  r.m = p.m;
  r.sector = std::string(to_string(solution.profile.sector));
  r.max_modes = config.max_modes;
  r.quad_count = config.quad_count;
  r.tol = config.tol;
  const auto& c = solution.profile.coefficients;
  r.coefficients.assign(c.data(), c.data() + c.size());
  r.energy = solution.energy;
  r.dirichlet = solution.dirichlet;
  r.residual_dual = solution.residual_dual;
  r.nodal_count = solution.nodal_count;
  r.iterations = solution.iterations;
  r.converged = solution.converged;
  return r;
}

std::string to_json(const SolutionRecord& r) {
  std::string out = "{\n";
  out += "  \"format_version\": " + std::to_string(r.format_version) + ",\n";
  out += "  \"n\": " + std::to_string(r.n) + ",\n";
  out += "  \"s\": " + num(r.s) + ",\n";
  out += "  \"q\": " + num(r.q) + ",\n";
  out += "  \"k\": " + std::to_string(r.k) + ",\n";
  out += "  \"m\": " + std::to_string(r.m) + ",\n";
  out += "  \"sector\": " + nlohmann::json(r.sector).dump() + ",\n";
  out += "  \"max_modes\": " + std::to_string(r.max_modes) + ",\n";
  out += "  \"quad_count\": " + std::to_string(r.quad_count) + ",\n";
  out += "  \"tol\": " + num(r.tol) + ",\n";
  out += "  \"coefficients\": [";
  for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
    out += (i == 0 ? "\n    " : ",\n    ") + num(r.coefficients[i]);
  }
  out += r.coefficients.empty() ? "],\n" : "\n  ],\n";
  out += "  \"energy\": " + num(r.energy) + ",\n";
  out += "  \"dirichlet\": " + num(r.dirichlet) + ",\n";
  out += "  \"residual_dual\": " + num(r.residual_dual) + ",\n";
  out += "  \"nodal_count\": " + std::to_string(r.nodal_count) + ",\n";
  out += "  \"iterations\": " + std::to_string(r.iterations) + ",\n";
  out += std::string("  \"converged\": ") + boolean(r.converged) + "\n";
  out += "}\n";
  return out;
}

SolutionRecord from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError(std::string("solution record is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParameterError("solution record must be a JSON object");
  SolutionRecord r;
  r.format_version = field<int>(doc, "format_version");
  if (r.format_version != kFormatVersion) {
    throw ParameterError("unsupported record format_version " + std::to_string(r.format_version));
  }
  r.n = field<int>(doc, "n");
  r.s = field<double>(doc, "s");
  r.q = field<double>(doc, "q");
  r.k = field<int>(doc, "k");
  r.m = field<int>(doc, "m");
  r.sector = field<std::string>(doc, "sector");
  r.max_modes = field<int>(doc, "max_modes");
  r.quad_count = field<int>(doc, "quad_count");
  r.tol = field<double>(doc, "tol");
  r.coefficients = field<std::vector<double>>(doc, "coefficients");
  r.energy = field<double>(doc, "energy");
  r.dirichlet = field<double>(doc, "dirichlet");
  r.residual_dual = field<double>(doc, "residual_dual");
  r.nodal_count = field<int>(doc, "nodal_count");
  r.iterations = field<int>(doc, "iterations");
  r.converged = field<bool>(doc, "converged");
  return r;
}

void write_record(const std::string& path, const SolutionRecord& record) {
  const std::string text = to_json(record);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParameterError("cannot open " + path + " for writing");
  file << text;
  if (!file) throw ParameterError("failed writing " + path);
}

SolutionRecord read_record(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParameterError("cannot read solution record " + path);
  std::ostringstream text;
  text << file.rdbuf();
  return from_json(text.str());
}

SpectralProfile record_profile(const SolutionRecord& record) {
  const ProblemParams params = make_params(record.n, record.s);
  if (record.k != params.k || record.m != params.m || std::abs(record.q - params.q) > 1e-12 * params.q) {
    throw ParameterError("solution record: q, k, m disagree with n and s");
  }
  if (record.max_modes < 1 || record.quad_count < 2 * record.max_modes || !(record.tol > 0.0)) {
    throw ParameterError("solution record: invalid max_modes, quad_count or tol");
  }
  SpectralProfile p;
  p.params = params;
  p.sector = parse_sector(record.sector);
  p.coefficients = Eigen::Map<const Eigen::VectorXd>(record.coefficients.data(),
                                                     static_cast<Eigen::Index>(record.coefficients.size()));
  return p;
}

std::vector<std::pair<int, double>> parse_ansatz(const std::string& text) {
  std::vector<std::pair<int, double>> out;
  if (text.empty()) return out;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ParameterError("ansatz entry '" + item + "' is not j:amp");
    std::size_t used = 0;
    int j = 0;
    double amp = 0.0;
    try {
      const std::string index = item.substr(0, colon);
      j = std::stoi(index, &used);
      if (used != index.size()) throw std::invalid_argument("index");
      const std::string value = item.substr(colon + 1);
      amp = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument("amplitude");
    } catch (const std::logic_error&) {
      throw ParameterError("ansatz entry '" + item + "' is not j:amp");
    }
    if (j < 0 || !std::isfinite(amp)) throw ParameterError("ansatz entry '" + item + "' is out of range");
    out.emplace_back(j, amp);
  }
  return out;
}

std::string render_feasibility(const FeasibilityReport& r) {
  std::ostringstream out;
  out << "n = " << r.n << '\n'
      << "s = " << num(r.s) << '\n'
      << "q = " << r.q.to_string() << '\n'
      << "clause_a = " << boolean(r.clause_a) << '\n'
      << "clause_b = " << boolean(r.clause_b) << '\n'
      << "clause_c = " << boolean(r.clause_c) << '\n'
      << "covered = " << boolean(r.covered) << '\n'
      << "d_paper = " << r.d_paper << '\n'
      << "d_computed = " << r.d_computed << '\n'
      << "m_reg = " << r.m_reg << '\n'
      << "rhs_paper = " << r.rhs_paper.to_string() << '\n'
      << "rhs_computed = " << r.rhs_computed.to_string() << '\n'
      << "ineq_paper = " << boolean(r.ineq_paper) << '\n'
      << "ineq_computed = " << boolean(r.ineq_computed) << '\n'
      << "discrepancy = " << boolean(r.discrepancy) << '\n';
  return out.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetric critical points of the critical fractional equation on S^n"};
  app.require_subcommand(1);

  int n = 0;
  double s = 0.0;
  int degrees = 10;
  auto* feas = app.add_subcommand("feasibility", "hypothesis case split and compactness arithmetic");
  feas->add_option("--n", n, "dimension")->required();
  feas->add_option("--s", s, "order")->required();

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of A_s for degrees 0..D-1");
  spectrum->add_option("--n", n, "dimension")->required();
  spectrum->add_option("--s", s, "order")->required();
  spectrum->add_option("--degrees", degrees, "number of degrees")->capture_default_str();

  SolveOptions solve_opts;
  std::string out_path;
  auto* solve_cmd = app.add_subcommand("solve", "solve once and write a solution record");
  add_solve_options(solve_cmd, solve_opts, true);
  solve_cmd->add_option("--out", out_path, "record path (stdout when omitted)");

  SolveOptions seq_opts;
  int count = 3;
  std::string prefix;
  auto* seq_cmd = app.add_subcommand("sequence", "ladder of critical points with increasing Dirichlet form");
  add_solve_options(seq_cmd, seq_opts, false);
  seq_cmd->add_option("--count", count, "number of solutions")->capture_default_str();
  seq_cmd->add_option("--out", prefix, "write PREFIX_k.json for each solution");

  std::string solution_path;
  auto* verify_cmd = app.add_subcommand("verify", "re-check a record at doubled resolution");
  verify_cmd->add_option("--solution", solution_path, "record path")->required();

  std::string pull_path;
  std::string csv_path;
  double r1max = 2.0;
  double r2max = 2.0;
  int grid = 21;
  auto* pull_cmd = app.add_subcommand("pullback", "sample the Euclidean solution on an (r1, r2) grid");
  pull_cmd->add_option("--solution", pull_path, "record path")->required();
  pull_cmd->add_option("--r1max", r1max, "largest |x'|")->capture_default_str();
  pull_cmd->add_option("--r2max", r2max, "largest |x''|")->capture_default_str();
  pull_cmd->add_option("--grid", grid, "points per axis")->capture_default_str();
  pull_cmd->add_option("--out", csv_path, "CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  try {
    if (feas->parsed()) return cmd_feasibility(n, s, out);
    if (spectrum->parsed()) return cmd_spectrum(n, s, degrees, out);
    if (solve_cmd->parsed()) return cmd_solve(solve_opts, solve_cmd->count("--quad") > 0, out_path, out);
    if (seq_cmd->parsed()) return cmd_sequence(seq_opts, seq_cmd->count("--quad") > 0, count, prefix, out);
    if (verify_cmd->parsed()) return cmd_verify(solution_path, out);
    if (pull_cmd->parsed()) return cmd_pullback(pull_path, r1max, r2max, grid, csv_path, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  err << "error: no subcommand\n";
  return kExitBadInput;
}

}  // namespace critsphere::cli
