#include "rampflow/local_reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rampflow/errors.hpp"
#include "rampflow/stepping.hpp"

namespace rampflow {

double godunov_flux(double rho_left, double rho_right, const VelocityLaw& velocity) {
    if (rho_left <= rho_right) {
        return std::min(velocity.flux(rho_left), velocity.flux(rho_right));
    }
    return velocity.flux(std::clamp(velocity.critical_density(), rho_right, rho_left));
}

double compute_local_cfl_dt(const ProblemSetup& problem) {
    const double convective = problem.grid.dx() / problem.velocity.max_flux_slope();
    double ramp = std::numeric_limits<double>::infinity();
    const double rates =
        problem.q_on.sup_norm(problem.final_time) + problem.q_off.sup_norm(problem.final_time);
    if (problem.ramps.has_ramps() && rates > 0.0) ramp = problem.ramps.length / rates;
    return problem.cfl_safety * std::min(convective, ramp);
}

LocalSolver::LocalSolver(ProblemSetup problem) : problem_(std::move(problem)) {
    problem_.validate();
    dt_ = compute_local_cfl_dt(problem_);
    rho_ = PaddedField(problem_.grid.n_cells(), 1, 1);
}

SchemeState LocalSolver::initial_state() const {
    SchemeState s;
    s.field = project_initial_datum(problem_.initial, problem_.grid);
    s.half = s.field.values;
    return s;
}

void LocalSolver::advance(SchemeState& state, double dt, StepTrace* trace) {
    const double t0 = state.field.time;
    const double lambda = dt / problem_.grid.dx();
    const int n = problem_.grid.n_cells();
    rho_.assign_interior(state.field.values);
    rho_.fill_ghosts(problem_.boundary);

    std::vector<double> F(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
        F[static_cast<std::size_t>(k)] = godunov_flux(rho_[k - 1], rho_[k], problem_.velocity);
    }
    std::vector<double> half(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const auto k = static_cast<std::size_t>(j);
        half[k] = rho_[j] - lambda * (F[k + 1] - F[k]);
    }

    const double q_on = problem_.q_on.average(t0, t0 + dt);
    const double q_off = problem_.q_off.average(t0, t0 + dt);
    std::vector<double> next = half;
    SourceTerms terms;
    terms.on.assign(half.size(), 0.0);
    terms.off.assign(half.size(), 0.0);
    const RampGeometry& ramps = problem_.ramps;
    for (int i = 0; i < ramps.cells; ++i) {
        const auto j = static_cast<std::size_t>(ramps.on_first + i);
        terms.on[j] = ramps.indicator_on[j] * q_on * (1.0 - half[j]);
        next[j] += dt * terms.on[j];
    }
    for (int i = 0; i < ramps.cells; ++i) {
        const auto j = static_cast<std::size_t>(ramps.off_first + i);
        terms.off[j] = source_off(half[j], ramps.indicator_off[j], q_off);
        next[j] -= dt * terms.off[j];
    }
    for (std::size_t j = 0; j < next.size(); ++j) {
        if (next[j] < -kMaxPrincipleSlack || next[j] > 1.0 + kMaxPrincipleSlack) {
            std::ostringstream os;
            os.precision(17);
            os << "local reference: density " << next[j] << " in cell " << j << " at step "
               << state.step + 1 << " leaves [0, 1]";
            throw InvariantViolation(os.str());
        }
    }
    if (trace) {
        trace->step = state.step;
        trace->time = t0;
        trace->dt = dt;
        trace->lambda = lambda;
        trace->q_on = q_on;
        trace->q_off = q_off;
        trace->previous = state.field.values;
        trace->previous_left_ghost = rho_[-1];
        trace->R.clear();
        trace->flux = std::move(F);
        trace->half = half;
        trace->r_on.clear();
        trace->sources = std::move(terms);
    }
    state.half = std::move(half);
    state.field.values = std::move(next);
    state.field.time = t0 + dt;
    ++state.step;
}

LocalTrajectory simulate_local(const ProblemSetup& problem) {
    LocalSolver solver(problem);
    SchemeState state = solver.initial_state();
    LocalTrajectory out;
    out.dt = solver.cfl_dt();
    march_to_outputs(state, solver.cfl_dt(), effective_output_times(problem),
                     [&](SchemeState& s, double dt) { solver.advance(s, dt); },
                     [&](const SchemeState& s) { out.snapshots.push_back(s.field); });
    out.steps = state.step;
    return out;
}

}  // namespace rampflow
