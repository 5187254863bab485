#pragma once

#include <vector>

#include "rampflow/scheme.hpp"

namespace rampflow {

/// Exact Riemann flux for the concave f(rho) = rho v(rho):
/// min f on [l, r] when l <= r, otherwise f(clamp(rho*, r, l)).
double godunov_flux(double rho_left, double rho_right, const VelocityLaw& velocity);

/// dt = safety * min{ dx / max|f'|, L / (|q_on| + |q_off|) }.
double compute_local_cfl_dt(const ProblemSetup& problem);

/// Godunov scheme for the local model with the same splitting as the nonlocal solver and
/// sources S_on = 1_on q_on (1 - rho), S_off = 1_off q_off rho.
class LocalSolver {
public:
    explicit LocalSolver(ProblemSetup problem);

    const ProblemSetup& problem() const { return problem_; }
    double cfl_dt() const { return dt_; }

    SchemeState initial_state() const;
    void advance(SchemeState& state, double dt, StepTrace* trace = nullptr);

private:
    ProblemSetup problem_;
    double dt_ = 0.0;
    PaddedField rho_;
};

struct LocalTrajectory {
    std::vector<DensityField> snapshots;  // one per output time
    long steps = 0;
    double dt = 0.0;
};

LocalTrajectory simulate_local(const ProblemSetup& problem);

}  // namespace rampflow
