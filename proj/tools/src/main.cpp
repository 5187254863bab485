#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rampflow/tools/config.hpp"
#include "rampflow/tools/experiments.hpp"

namespace rt = rampflow::tools;
using nlohmann::json;

namespace {

struct Common {
    std::string config;
    std::string out;
    std::optional<double> cfl_safety;
    bool dry_run = false;
    bool no_diagnostics = false;
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("config", c.config, "Preset name or path to a JSON config")->required();
    cmd->add_option("--out", c.out, "Output directory (overrides output_dir)");
    cmd->add_option("--cfl-safety", c.cfl_safety, "CFL safety factor in (0, 1]");
    cmd->add_flag("--dry-run", c.dry_run, "Validate the configuration and stop");
    cmd->add_flag("--no-diagnostics", c.no_diagnostics, "Skip per-step diagnostics");
}

rt::RunConfig load(const Common& c) {
    json tree = rt::resolve_config_tree(c.config);
    if (tree.is_object()) {
        if (!c.out.empty()) tree["output_dir"] = c.out;
        if (c.cfl_safety) tree["cfl_safety"] = *c.cfl_safety;
    }
    return rt::parse_config(tree);
}

rt::RunOptions options(const Common& c) {
    rt::RunOptions o;
    o.dry_run = c.dry_run;
    o.diagnostics = !c.no_diagnostics;
    o.threads = c.threads;
    return o;
}

void print_manifest(const std::filesystem::path& dir, const std::vector<rt::ManifestEntry>& m) {
    std::cout << "wrote " << m.size() << " files to " << dir.string() << "\n";
}

int cmd_run(const Common& c) {
    const rt::RunConfig cfg = load(c);
    if (c.dry_run) {
        std::cout << cfg.name << ": configuration valid (" << cfg.base.problem.grid.n_cells()
                  << " cells, " << cfg.models.size() << " model(s)); dry run, nothing written\n";
        return 0;
    }
    const rt::RunSummary s = rt::run(cfg, options(c));
    for (const auto& v : s.variants) {
        const auto& r = v.result;
        std::cout << rampflow::to_string(v.variant) << ": " << r.steps << " steps, dt " << r.dt;
        if (r.report) {
            const auto& d = r.report->summary;
            std::cout << ", rho in [" << d.max_principle.min_density << ", "
                      << d.max_principle.max_density << "]";
            std::cout << ", L1 bound violations " << d.l1_violations << ", TV bound violations "
                      << d.tv_violations;
            if (d.worst_entropy_residual) std::cout << ", entropy residual " << *d.worst_entropy_residual;
        }
        std::cout << "\n";
    }
    print_manifest(s.output_dir, s.manifest);
    std::printf("wall time %.2f s\n", s.wall_seconds);
    return 0;
}

int cmd_convergence(const Common& c, std::vector<double> etas) {
    const rt::RunConfig cfg = load(c);
    if (etas.empty()) etas = cfg.convergence_etas;
    const rt::ConvergenceResult r = rt::convergence_study(cfg, etas, options(c));
    if (c.dry_run) {
        std::cout << cfg.name << ": configuration valid for " << etas.size()
                  << " eta value(s); dry run, nothing written\n";
        return 0;
    }
    if (!cfg.notes.empty()) std::cout << "note: " << cfg.notes << "\n";
    std::cout << "eta,l1_distance,steps\n";
    for (const auto& row : r.rows) {
        std::cout << rt::format_double(row.eta) << "," << rt::format_double(row.l1_distance) << ","
                  << row.steps << "\n";
    }
    std::cout << "local reference: " << r.local_steps << " steps\n";
    std::cout << "strictly decreasing in eta: " << (r.strictly_decreasing ? "yes" : "no") << "\n";
    print_manifest(cfg.output_dir, r.manifest);
    return 0;
}

int cmd_compare(const Common& c, const std::vector<std::string>& names) {
    rt::RunConfig cfg = load(c);
    std::vector<rampflow::ModelVariant> variants;
    std::vector<std::string> errors;
    for (const auto& n : names) {
        if (const auto v = rampflow::parse_model_variant(n)) {
            variants.push_back(*v);
        } else {
            errors.push_back("--models: unknown model \"" + n + "\"");
        }
    }
    if (!errors.empty()) throw rt::ConfigValidationError(errors);
    if (variants.empty()) variants = cfg.models;
    const rt::ComparisonResult r = rt::compare_models(cfg, variants, options(c));
    if (c.dry_run) {
        std::cout << cfg.name << ": configuration valid; dry run, nothing written\n";
        return 0;
    }
    for (std::size_t k = 0; k < r.variants.size(); ++k) {
        double hi = 0.0;
        for (const auto& s : r.snapshots[k]) {
            for (double v : s.values) hi = std::max(hi, v);
        }
        std::cout << rampflow::to_string(r.variants[k]) << ": max density over outputs "
                  << rt::format_double(hi) << "\n";
    }
    print_manifest(cfg.output_dir, r.manifest);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlocal traffic flow with on- and off-ramps"};
    app.require_subcommand(1);

    Common run_opts;
    auto* run = app.add_subcommand("run", "Run every configured model variant");
    add_common(run, run_opts);

    Common conv_opts;
    std::vector<double> etas;
    auto* conv = app.add_subcommand("convergence", "Model 2 vs local Godunov over a list of eta");
    add_common(conv, conv_opts);
    conv->add_option("--eta", etas, "Kernel radii (defaults to convergence_etas)")->delimiter(',');
    conv->add_option("--threads", conv_opts.threads, "Parallel runs (0 = hardware concurrency)");

    Common cmp_opts;
    std::vector<std::string> models;
    auto* cmp = app.add_subcommand("compare", "Side-by-side snapshots of several variants");
    add_common(cmp, cmp_opts);
    cmp->add_option("--models", models, "Variants, e.g. model0,model1,model2")->delimiter(',');

    auto* presets = app.add_subcommand("presets", "Built-in configurations");
    presets->require_subcommand(1);
    auto* list = presets->add_subcommand("list", "List preset names");
    std::string show_name;
    auto* show = presets->add_subcommand("show", "Print a preset as JSON");
    show->add_option("name", show_name)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(run_opts);
        if (*conv) return cmd_convergence(conv_opts, etas);
        if (*cmp) return cmd_compare(cmp_opts, models);
        if (*list) {
            for (const auto& n : rt::preset_names()) {
                std::cout << n << "  " << rt::preset_tree(n).value("notes", "") << "\n";
            }
            return 0;
        }
        if (*show) {
            std::cout << rt::preset_tree(show_name).dump(2) << "\n";
            return 0;
        }
    } catch (const rt::ConfigValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
