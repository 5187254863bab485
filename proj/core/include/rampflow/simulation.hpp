#pragma once

#include <optional>
#include <vector>

#include "rampflow/diagnostics.hpp"
#include "rampflow/scheme.hpp"

namespace rampflow {

struct SimulationOptions {
    bool diagnostics = true;
    DiagnosticsMonitor::Options monitor;
};

struct SimulationResult {
    DensityField initial;
    std::vector<DensityField> snapshots;  // one per output time
    std::optional<DiagnosticsReport> report;
    long steps = 0;
    double dt = 0.0;
};

/// Runs the nonlocal scheme to every output time, optionally streaming diagnostics.
SimulationResult simulate(const ModelConfig& config, const SimulationOptions& options = {});

}  // namespace rampflow
