#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "rampflow/scheme.hpp"

namespace rampflow {

/// Output times of a run; falls back to {final_time} when none were requested.
inline std::vector<double> effective_output_times(const ProblemSetup& problem) {
    if (problem.output_times.empty()) return {problem.final_time};
    return problem.output_times;
}

/// Steps `state` with dt_cfl, shortening the last step before each target so that the
/// state lands on it exactly, and calls emit(state) at every target.
template <class Step, class Emit>
void march_to_outputs(SchemeState& state, double dt_cfl, std::span<const double> targets,
                      Step&& step, Emit&& emit) {
    for (const double target : targets) {
        const double eps = 1e-12 * std::max(1.0, target);
        while (target - state.field.time > eps) {
            const double remaining = target - state.field.time;
            if (remaining <= dt_cfl * (1.0 + 1e-9)) {
                step(state, remaining);
                state.field.time = target;
            } else {
                step(state, dt_cfl);
            }
        }
        state.field.time = std::max(state.field.time, target);
        emit(static_cast<const SchemeState&>(state));
    }
}

template <class Step, class Emit>
void march_to_outputs(SchemeState& state, double dt_cfl, const std::vector<double>& targets,
                      Step&& step, Emit&& emit) {
    march_to_outputs(state, dt_cfl, std::span<const double>(targets), std::forward<Step>(step),
                     std::forward<Emit>(emit));
}

}  // namespace rampflow
