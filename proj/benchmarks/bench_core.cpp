#include <benchmark/benchmark.h>

#include "critsphere/invariant_harmonics.hpp"
#include "critsphere/ode_oracle.hpp"
#include "critsphere/solver.hpp"
#include "critsphere/special_functions.hpp"
#include "critsphere/variational.hpp"

using namespace critsphere;

static void BM_GaussJacobi(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_jacobi(count, 0.0, 0.0));
}
BENCHMARK(BM_GaussJacobi)->Arg(64)->Arg(256)->Arg(1024);

static void BM_Basis(benchmark::State& state) {
  const int modes = static_cast<int>(state.range(0));
  const auto p = make_params(3, 1.25);
  for (auto _ : state) benchmark::DoNotOptimize(InvariantBasis(p, modes - 1, 4 * modes));
}
BENCHMARK(BM_Basis)->Arg(64)->Arg(160);

static void BM_Residual(benchmark::State& state) {
  const int modes = static_cast<int>(state.range(0));
  const Discretization disc(make_params(3, 1.0), modes - 1, 4 * modes);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(modes);
  c(0) = 1.0;
  c(2) = 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(residual_dual(disc, c));
}
BENCHMARK(BM_Residual)->Arg(64)->Arg(160)->Arg(320);

static void BM_NewtonRefine(benchmark::State& state) {
  const auto p = make_params(3, 1.0);
  SolverConfig config;
  config.sector = Sector::odd;
  const Discretization disc = make_discretization(p, config);
  const Solution start = solve(disc, config);
  for (auto _ : state) benchmark::DoNotOptimize(newton_refine(disc, start.profile));
}
BENCHMARK(BM_NewtonRefine)->Unit(benchmark::kMillisecond);

static void BM_OddSolve(benchmark::State& state) {
  const auto p = make_params(3, 1.0);
  SolverConfig config;
  config.sector = Sector::odd;
  const Discretization disc = make_discretization(p, config);
  for (auto _ : state) benchmark::DoNotOptimize(solve(disc, config));
}
BENCHMARK(BM_OddSolve)->Unit(benchmark::kMillisecond);

static void BM_OdeSolve(benchmark::State& state) {
  const auto p = make_params(3, 1.0);
  const UniformMesh mesh = UniformMesh::with_cells(static_cast<int>(state.range(0)));
  std::vector<double> seed(mesh.size);
  for (int i = 0; i < mesh.size; ++i) seed[i] = 1.5 * mesh.node(i);
  OdeOptions options;
  options.antisymmetric = true;
  for (auto _ : state) benchmark::DoNotOptimize(ode_solve(p, seed, mesh, options));
}
BENCHMARK(BM_OdeSolve)->Arg(1000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
