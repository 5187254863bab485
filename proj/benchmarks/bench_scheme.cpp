#include <benchmark/benchmark.h>

#include <cmath>

#include "rampflow/diagnostics.hpp"
#include "rampflow/local_reference.hpp"
#include "rampflow/scheme.hpp"

namespace {

using namespace rampflow;

ModelConfig road(double eta, double delta, ModelVariant v) {
    ModelConfig c;
    c.problem.grid = build_grid(-1.0, 9.0, 1e-3);
    c.problem.ramps = build_ramps(c.problem.grid, {1.0, 1.1}, {3.0, 3.1}, 0.1);
    c.problem.q_on = RampRate::constant(1.2);
    c.problem.q_off = RampRate::constant(0.8);
    c.problem.initial = InitialDatum::constant(0.3);
    c.problem.final_time = 1e3;
    c.kernel = {eta, delta};
    c.variant = v;
    return c;
}

void BM_ConvolutionFlux(benchmark::State& state) {
    const double eta = state.range(0) * 1e-3;
    const auto g = discretize_convective_weights({eta, 0.0}, 1e-3);
    PaddedField f(10000, 1, static_cast<int>(g.size()));
    std::vector<double> v(10000);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = 0.5 + 0.4 * std::sin(0.01 * j);
    f.assign_interior(v);
    f.fill_ghosts(BoundaryConditions::outflow());
    for (auto _ : state) benchmark::DoNotOptimize(convolution_flux(f, g));
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_ConvolutionFlux)->Arg(4)->Arg(10)->Arg(50)->Arg(100);

void BM_NonlocalStep(benchmark::State& state) {
    const auto v = static_cast<ModelVariant>(state.range(0));
    NonlocalSolver solver(road(0.05, -0.01, v));
    SchemeState st = solver.initial_state();
    for (auto _ : state) solver.advance(st, solver.cfl_dt());
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_NonlocalStep)->Arg(0)->Arg(1)->Arg(2);

void BM_NonlocalStepWithTrace(benchmark::State& state) {
    NonlocalSolver solver(road(0.05, -0.01, ModelVariant::Model1));
    SchemeState st = solver.initial_state();
    StepTrace trace;
    for (auto _ : state) solver.advance(st, solver.cfl_dt(), &trace);
}
BENCHMARK(BM_NonlocalStepWithTrace);

void BM_LocalStep(benchmark::State& state) {
    LocalSolver solver(road(0.05, 0.0, ModelVariant::Model2).problem);
    SchemeState st = solver.initial_state();
    for (auto _ : state) solver.advance(st, solver.cfl_dt());
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_LocalStep);

void BM_EntropyResidual(benchmark::State& state) {
    NonlocalSolver solver(road(0.05, -0.01, ModelVariant::Model1));
    SchemeState st = solver.initial_state();
    StepTrace trace;
    for (int i = 0; i < 50; ++i) solver.advance(st, solver.cfl_dt(), &trace);
    const auto kappas = kappa_grid(0.05);
    const VelocityLaw vel = VelocityLaw::affine();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            entropy_residual(EntropyStep::from_trace(trace, st.field.values), vel, kappas));
    }
}
BENCHMARK(BM_EntropyResidual);

}  // namespace

BENCHMARK_MAIN();
