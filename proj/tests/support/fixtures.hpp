#pragma once

#include "rampflow/scheme.hpp"

namespace rampflow::fixtures {

inline ProblemSetup road(double x_left, double x_right, double dx, double q_on, double q_off) {
    ProblemSetup p;
    p.grid = build_grid(x_left, x_right, dx);
    p.ramps = build_ramps(p.grid, {1.0, 1.1}, {3.0, 3.1}, 0.1);
    p.q_on = RampRate::constant(q_on);
    p.q_off = RampRate::constant(q_off);
    return p;
}

// Example 1: constant 0.3 on [-1, 9], eta 0.05, delta -0.01.
inline ModelConfig example1(ModelVariant v, double final_time) {
    ModelConfig c{road(-1.0, 9.0, 1e-3, 1.2, 0.8), {0.05, -0.01}, v};
    c.problem.initial = InitialDatum::constant(0.3);
    c.problem.final_time = final_time;
    c.problem.output_times = {final_time};
    return c;
}

// Example 3: step 0.1/0.9 at x = 1.1 on a coarse mesh.
inline ModelConfig example3(ModelVariant v) {
    ModelConfig c{road(-1.0, 9.0, 0.01, 1.0, 0.2), {0.05, -0.01}, v};
    c.problem.initial = InitialDatum::step(1.1, 0.1, 0.9);
    c.problem.final_time = 0.3;
    c.problem.output_times = {0.3};
    return c;
}

// Example 4: empty road, Dirichlet 0.4 inflow, sinusoidal on-ramp.
inline ModelConfig example4(ModelVariant v, double final_time) {
    ModelConfig c{road(-1.0, 5.0, 1e-3, 0.0, 0.2), {0.1, -0.02}, v};
    c.problem.q_on = RampRate::sinusoidal(1.0);
    c.problem.initial = InitialDatum::constant(0.0);
    c.problem.boundary = BoundaryConditions::inflow(0.4);
    c.problem.final_time = final_time;
    c.problem.output_times = {final_time};
    return c;
}

// Periodic ramp-free road carrying a cos^2 bump.
inline ModelConfig periodic_bump(double dx, double final_time) {
    ModelConfig c;
    c.problem.grid = build_grid(0.0, 2.0, dx);
    c.problem.ramps = RampGeometry::none(c.problem.grid);
    c.problem.boundary = BoundaryConditions::make_periodic();
    c.problem.initial = InitialDatum::bump(1.0, 0.6, 0.8);
    c.problem.final_time = final_time;
    c.kernel = {0.05, 0.0};
    c.variant = ModelVariant::Model1;
    return c;
}

}  // namespace rampflow::fixtures
