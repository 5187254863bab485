#include "rampflow/tools/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rampflow/alignment.hpp"
#include "rampflow/local_reference.hpp"
#include "rampflow/stepping.hpp"

namespace rampflow::tools {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_time_tag(double t) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, t);
    return std::string(buf, res.ptr);
}

namespace {

class Writer {
public:
    explicit Writer(fs::path root) : root_(std::move(root)) {
        std::error_code ec;
        fs::create_directories(root_, ec);
        if (ec) throw std::runtime_error(root_.string() + ": cannot create directory: " + ec.message());
    }

    const fs::path& root() const { return root_; }

    void write(const std::string& relative, const std::string& kind, const std::string& body) {
        const fs::path path = root_ / relative;
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
        out << body;
        out.close();
        if (!out) throw std::runtime_error(path.string() + ": write failed");
        manifest_.push_back({relative, kind, static_cast<std::uintmax_t>(body.size())});
    }

    std::vector<ManifestEntry>& manifest() { return manifest_; }

private:
    fs::path root_;
    std::vector<ManifestEntry> manifest_;
};

std::string snapshot_csv(const Grid& grid, const DensityField& field) {
    std::string s = "x,rho\n";
    for (int j = 0; j < grid.n_cells(); ++j) {
        s += format_double(grid.cell_center(j));
        s += ',';
        s += format_double(field.values[static_cast<std::size_t>(j)]);
        s += '\n';
    }
    return s;
}

std::string steps_csv(const DiagnosticsReport& report) {
    std::string s =
        "step,time,dt,min,max,l1,c1,tv,tv_bound,entropy_residual,mass,mass_in_on,mass_out_off,"
        "mass_in_left,mass_out_right,balance_error\n";
    for (const auto& r : report.steps) {
        const double row[] = {r.time, r.dt, r.min_density, r.max_density, r.l1, r.c1, r.tv,
                              r.tv_bound};
        s += std::to_string(r.step);
        for (double v : row) s += ',' + format_double(v);
        s += ',';
        if (r.entropy_residual) s += format_double(*r.entropy_residual);
        const double tail[] = {r.mass, r.mass_in_on, r.mass_out_off, r.mass_in_left,
                               r.mass_out_right, r.balance_error};
        for (double v : tail) s += ',' + format_double(v);
        s += '\n';
    }
    return s;
}

json manifest_json(const std::vector<ManifestEntry>& manifest) {
    json out = json::array();
    for (const auto& m : manifest) out.push_back({{"path", m.path}, {"kind", m.kind}, {"bytes", m.bytes}});
    return out;
}

std::string snapshot_name(ModelVariant v, double t) {
    return std::string(to_string(v)) + "_T" + format_time_tag(t) + ".csv";
}

std::string plot_script(const std::string& title, const std::vector<std::string>& csvs) {
    std::ostringstream os;
    os << "# Plots the density snapshots written next to this file.\n"
       << "import csv\nimport pathlib\n\nimport matplotlib\nmatplotlib.use(\"Agg\")\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "HERE = pathlib.Path(__file__).resolve().parent\nFILES = [\n";
    for (const auto& f : csvs) os << "    \"" << f << "\",\n";
    os << "]\n\n\ndef load(name):\n"
       << "    with open(HERE / name) as fh:\n"
       << "        rows = list(csv.reader(fh))\n"
       << "    header, body = rows[0], rows[1:]\n"
       << "    cols = list(zip(*body))\n"
       << "    return header, [[float(v) for v in c] for c in cols]\n\n\n"
       << "fig, ax = plt.subplots(figsize=(9, 4))\n"
       << "for name in FILES:\n"
       << "    header, cols = load(name)\n"
       << "    for label, col in zip(header[1:], cols[1:]):\n"
       << "        ax.plot(cols[0], col, lw=1, label=f\"{name[:-4]} {label}\")\n"
       << "ax.set_xlabel(\"x\")\nax.set_ylabel(\"rho\")\nax.set_title(\"" << title << "\")\n"
       << "ax.legend(fontsize=7)\nfig.tight_layout()\n"
       << "fig.savefig(HERE / \"" << title << ".png\", dpi=150)\n";
    return os.str();
}

SimulationOptions simulation_options(const RunConfig& cfg, const RunOptions& options) {
    SimulationOptions s;
    s.diagnostics = options.diagnostics;
    s.monitor.kappas = kappa_grid(cfg.kappa_step);
    s.monitor.max_principle_tol = kMaxPrincipleSlack;
    return s;
}

json snapshot_extrema(const std::vector<DensityField>& snaps) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : snaps) {
        for (double v : s.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return {{"min_density", lo}, {"max_density", hi}};
}

unsigned worker_count(const RunOptions& options, std::size_t jobs) {
    unsigned n = options.threads ? options.threads : std::thread::hardware_concurrency();
    n = std::max(1u, n);
    return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

// Runs the jobs with at most `workers` in flight, preserving order.
template <class R>
std::vector<R> run_parallel(std::vector<std::function<R()>> jobs, unsigned workers) {
    std::vector<R> out;
    out.reserve(jobs.size());
    if (workers <= 1) {
        for (auto& j : jobs) out.push_back(j());
        return out;
    }
    std::vector<std::future<R>> pending;
    std::size_t next = 0;
    while (next < jobs.size() && pending.size() < workers) {
        pending.push_back(std::async(std::launch::async, jobs[next++]));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        out.push_back(pending[i].get());
        if (next < jobs.size()) pending.push_back(std::async(std::launch::async, jobs[next++]));
    }
    return out;
}

}  // namespace

json digest(const DiagnosticsReport& report, double final_time) {
    const auto& c = report.constants;
    const auto& s = report.summary;
    const double inflow = s.boundary_inflow;
    json mp = {{"tolerance", kMaxPrincipleSlack},
               {"violations", s.max_principle.violation_count},
               {"min_density", s.max_principle.min_density},
               {"max_density", s.max_principle.max_density},
               {"max_overshoot", s.max_principle.max_overshoot},
               {"max_undershoot", s.max_principle.max_undershoot}};
    json first = json::array();
    for (const auto& v : s.max_principle.violations) {
        if (first.size() >= 8) break;
        first.push_back({{"step", v.step}, {"cell", v.cell}, {"value", v.value}});
    }
    mp["first_violations"] = first;
    json out = {
        {"steps", s.steps},
        {"max_principle", mp},
        {"l1_bound", {{"violations", s.l1_violations}, {"worst_margin", s.worst_l1_margin}}},
        {"tv_bound",
         {{"violations", s.tv_violations},
          {"worst_margin", s.worst_tv_margin},
          {"two_edge_violations", s.tv_two_edge_violations}}},
        {"entropy",
         s.worst_entropy_residual ? json{{"worst_residual", *s.worst_entropy_residual}} : json(nullptr)},
        {"mass",
         {{"initial", s.initial_mass},
          {"final", s.final_mass},
          {"in_on_ramp", s.total_in_on},
          {"out_off_ramp", s.total_out_off},
          {"in_boundary", s.total_in_boundary},
          {"out_boundary", s.total_out_boundary},
          {"boundary_inflow", s.boundary_inflow},
          {"worst_step_balance_error", s.worst_balance_error}}},
        {"sup_tv_discrete", s.sup_tv},
        {"constants",
         {{"omega0", c.omega0},
          {"omega_slope", c.omega_slope},
          {"script_L", c.script_L},
          {"H", c.H},
          {"q_on_sup", c.q_on_sup},
          {"q_off_sup", c.q_off_sup},
          {"ramp_length", c.ramp_length},
          {"rho0_l1", c.rho0_l1},
          {"rho0_tv", c.rho0_tv},
          {"C1_T", c.C1(final_time, inflow)},
          {"tv_bound_T", c.tv_bound(final_time)},
          {"C_xt_T", c.C_xt(final_time, inflow)},
          {"W_T", c.W(final_time, inflow)},
          {"C_stab_T_with_discrete_tv", c.C_stab(final_time, s.sup_tv, inflow)}}},
    };
    return out;
}

RunSummary run(const RunConfig& cfg, const RunOptions& options) {
    RunSummary summary;
    summary.name = cfg.name;
    summary.output_dir = cfg.output_dir;
    summary.config = cfg.source;
    if (options.dry_run) return summary;

    const auto start = std::chrono::steady_clock::now();
    const SimulationOptions sim = simulation_options(cfg, options);
    for (const ModelVariant v : cfg.models) {
        summary.variants.push_back({v, simulate(cfg.config_for(v), sim)});
    }

    Writer out(cfg.output_dir);
    const ProblemSetup& p = cfg.base.problem;
    const std::vector<double> targets = effective_output_times(p);
    std::vector<std::string> csvs;
    json variants = json::array();
    for (const auto& outcome : summary.variants) {
        const std::string model(to_string(outcome.variant));
        const SimulationResult& r = outcome.result;
        summary.steps += r.steps;
        json files = json::array();
        for (std::size_t i = 0; i < r.snapshots.size(); ++i) {
            const std::string name = snapshot_name(outcome.variant, targets[i]);
            out.write(name, "snapshot", snapshot_csv(p.grid, r.snapshots[i]));
            csvs.push_back(name);
            files.push_back(name);
        }
        json entry = {{"model", model},
                      {"steps", r.steps},
                      {"cfl_dt", r.dt},
                      {"snapshots", files},
                      {"snapshot_extrema", snapshot_extrema(r.snapshots)}};
        if (r.report) {
            const json d = digest(*r.report, p.final_time);
            out.write("diagnostics_" + model + ".json", "diagnostics", d.dump(2) + "\n");
            out.write("steps_" + model + ".csv", "steps", steps_csv(*r.report));
            entry["diagnostics"] = d;
        }
        variants.push_back(entry);
    }
    if (cfg.plot_script) out.write("plot.py", "plot", plot_script(cfg.name, csvs));

    json doc = {{"name", cfg.name},
                {"config", cfg.source},
                {"output_times", targets},
                {"steps", summary.steps},
                {"variants", variants},
                {"manifest", manifest_json(out.manifest())}};
    out.write("summary.json", "summary", doc.dump(2) + "\n");
    summary.manifest = out.manifest();
    summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

ConvergenceResult convergence_study(const RunConfig& cfg, const std::vector<double>& etas,
                                    const RunOptions& options) {
    std::vector<std::string> errors;
    const double dx = cfg.base.problem.grid.dx();
    if (cfg.base.kernel.delta != 0.0) errors.push_back("kernel.delta: must be 0 for the convergence study");
    if (etas.empty()) errors.push_back("eta: at least one value is required");
    for (std::size_t i = 0; i < etas.size(); ++i) {
        const std::string path = "eta[" + std::to_string(i) + "]";
        if (!(etas[i] > 0.0)) {
            errors.push_back(path + ": must be positive");
        } else if (!aligned_multiple(etas[i], dx)) {
            errors.push_back(path + ": " + format_double(etas[i]) +
                             " is not a multiple of domain.dx = " + format_double(dx));
        }
    }
    if (!errors.empty()) throw ConfigValidationError(std::move(errors));

    ConvergenceResult result;
    if (options.dry_run) {
        for (double eta : etas) result.rows.push_back({eta, 0.0, 0});
        return result;
    }

    const ProblemSetup& p = cfg.base.problem;
    ProblemSetup final_only = p;
    final_only.output_times = {p.final_time};
    SimulationOptions sim = simulation_options(cfg, options);

    struct Job {
        DensityField field;
        long steps = 0;
    };
    std::vector<std::function<Job()>> jobs;
    jobs.push_back([&final_only] {
        LocalTrajectory t = simulate_local(final_only);
        return Job{std::move(t.snapshots.back()), t.steps};
    });
    for (double eta : etas) {
        jobs.push_back([&, eta] {
            ModelConfig c{final_only, {eta, 0.0}, ModelVariant::Model2};
            SimulationResult r = simulate(c, sim);
            return Job{std::move(r.snapshots.back()), r.steps};
        });
    }
    const std::vector<Job> done = run_parallel(std::move(jobs), worker_count(options, etas.size() + 1));

    Writer out(cfg.output_dir);
    out.write("local/snapshot_T" + format_time_tag(p.final_time) + ".csv", "snapshot",
              snapshot_csv(p.grid, done[0].field));
    result.local_steps = done[0].steps;
    std::string table = "eta,l1_distance,steps\n";
    for (std::size_t i = 0; i < etas.size(); ++i) {
        const Job& j = done[i + 1];
        const double d = l1_distance(j.field.values, done[0].field.values, dx);
        result.rows.push_back({etas[i], d, j.steps});
        out.write("eta_" + format_time_tag(etas[i]) + "/snapshot_T" + format_time_tag(p.final_time) +
                      ".csv",
                  "snapshot", snapshot_csv(p.grid, j.field));
        table += format_double(etas[i]) + "," + format_double(d) + "," + std::to_string(j.steps) + "\n";
    }
    out.write("convergence.csv", "table", table);

    result.strictly_decreasing = true;
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        if (!(result.rows[i].l1_distance < result.rows[i - 1].l1_distance)) {
            result.strictly_decreasing = false;
        }
    }
    json rows = json::array();
    for (const auto& row : result.rows) {
        rows.push_back({{"eta", row.eta}, {"l1_distance", row.l1_distance}, {"steps", row.steps}});
    }
    const json doc = {{"name", cfg.name},
                      {"notes", cfg.notes},
                      {"config", cfg.source},
                      {"compared_at", p.final_time},
                      {"local_steps", result.local_steps},
                      {"rows", rows},
                      {"strictly_decreasing", result.strictly_decreasing},
                      {"manifest", manifest_json(out.manifest())}};
    out.write("convergence.json", "summary", doc.dump(2) + "\n");
    result.manifest = out.manifest();
    return result;
}

ComparisonResult compare_models(const RunConfig& cfg, const std::vector<ModelVariant>& variants,
                                const RunOptions& options) {
    if (variants.empty()) throw ConfigValidationError({"models: at least one model is required"});
    ComparisonResult result;
    result.variants = variants;
    if (options.dry_run) return result;

    const SimulationOptions sim = simulation_options(cfg, options);
    for (const ModelVariant v : variants) {
        SimulationResult r = simulate(cfg.config_for(v), sim);
        result.initial.push_back(std::move(r.initial));
        result.snapshots.push_back(std::move(r.snapshots));
    }

    const ProblemSetup& p = cfg.base.problem;
    const std::vector<double> targets = effective_output_times(p);
    Writer out(cfg.output_dir);
    std::vector<std::string> csvs;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        std::string s = "x";
        for (const ModelVariant v : variants) s += ",rho_" + std::string(to_string(v));
        s += '\n';
        for (int j = 0; j < p.grid.n_cells(); ++j) {
            s += format_double(p.grid.cell_center(j));
            for (std::size_t k = 0; k < variants.size(); ++k) {
                s += ',' + format_double(result.snapshots[k][t].values[static_cast<std::size_t>(j)]);
            }
            s += '\n';
        }
        const std::string name = "compare_T" + format_time_tag(targets[t]) + ".csv";
        out.write(name, "table", s);
        csvs.push_back(name);
    }
    if (cfg.plot_script) out.write("plot_compare.py", "plot", plot_script(cfg.name + "_compare", csvs));
    result.manifest = out.manifest();
    return result;
}

}  // namespace rampflow::tools
