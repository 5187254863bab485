#include "rampflow/simulation.hpp"

#include "rampflow/stepping.hpp"

namespace rampflow {

SimulationResult simulate(const ModelConfig& config, const SimulationOptions& options) {
    NonlocalSolver solver(config);
    SchemeState state = solver.initial_state();
    SimulationResult result;
    result.initial = state.field;
    result.dt = solver.cfl_dt();

    std::optional<DiagnosticsMonitor> monitor;
    if (options.diagnostics) monitor.emplace(solver.config(), state.field, options.monitor);
    StepTrace trace;

    const std::vector<double> targets = effective_output_times(config.problem);
    march_to_outputs(
        state, solver.cfl_dt(), targets,
        [&](SchemeState& s, double dt) {
            solver.advance(s, dt, monitor ? &trace : nullptr);
            if (monitor) monitor->observe(trace, s.field);
        },
        [&](const SchemeState& s) { result.snapshots.push_back(s.field); });

    result.steps = state.step;
    if (monitor) result.report = monitor->take();
    return result;
}

}  // namespace rampflow
