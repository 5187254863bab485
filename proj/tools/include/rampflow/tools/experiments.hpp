#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rampflow/simulation.hpp"
#include "rampflow/tools/config.hpp"

namespace rampflow::tools {

struct RunOptions {
    bool diagnostics = true;
    bool dry_run = false;  // validate and plan, write nothing
    /// Worker threads for the convergence study; 0 picks hardware concurrency.
    unsigned threads = 0;
};

struct ManifestEntry {
    std::string path;  // relative to the output directory
    std::string kind;  // snapshot, diagnostics, steps, summary, plot, table
    std::uintmax_t bytes = 0;
};

struct VariantOutcome {
    ModelVariant variant = ModelVariant::Model1;
    SimulationResult result;
};

struct RunSummary {
    std::string name;
    std::filesystem::path output_dir;
    nlohmann::json config;
    std::vector<VariantOutcome> variants;
    long steps = 0;  // summed over variants
    std::vector<ManifestEntry> manifest;
    /// Reported on the console only, so that written files stay byte-reproducible.
    double wall_seconds = 0.0;
};

/// One model run per configured variant; writes snapshots, diagnostics and summary.json.
RunSummary run(const RunConfig& config, const RunOptions& options = {});

struct ConvergenceRow {
    double eta = 0.0;
    double l1_distance = 0.0;
    long steps = 0;
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    long local_steps = 0;
    bool strictly_decreasing = false;
    std::vector<ManifestEntry> manifest;
};

/// Model 2 for each eta against one local Godunov run, compared at the final time.
/// Requires delta = 0 and mesh-aligned eta values.
ConvergenceResult convergence_study(const RunConfig& config, const std::vector<double>& etas,
                                    const RunOptions& options = {});

struct ComparisonResult {
    std::vector<ModelVariant> variants;
    std::vector<DensityField> initial;
    std::vector<std::vector<DensityField>> snapshots;  // [variant][output time]
    std::vector<ManifestEntry> manifest;
};

/// Runs each listed variant and writes compare_T<t>.csv with columns x, rho_<model>...
ComparisonResult compare_models(const RunConfig& config, const std::vector<ModelVariant>& variants,
                                const RunOptions& options = {});

/// Compact JSON view of a diagnostics report.
nlohmann::json digest(const DiagnosticsReport& report, double final_time);

/// %.17g, locale independent.
std::string format_double(double v);
/// Shortest %g form used in file names.
std::string format_time_tag(double t);

}  // namespace rampflow::tools
