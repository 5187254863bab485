// Acceptance checks, one [PASS]/[FAIL] line per criterion.
//
//   acceptance [--cli <path to rampflow>] [criterion...]
//
// With no criterion names every check runs. Exit status is nonzero if any check fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rampflow/diagnostics.hpp"
#include "rampflow/errors.hpp"
#include "rampflow/kernels.hpp"
#include "rampflow/local_reference.hpp"
#include "rampflow/simulation.hpp"
#include "rampflow/tools/config.hpp"
#include "rampflow/tools/experiments.hpp"

namespace fs = std::filesystem;
using namespace rampflow;
using namespace rampflow::tools;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("rampflow_acceptance_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

RunConfig preset_in(const std::string& name, const fs::path& out) {
    auto tree = preset_tree(name);
    tree["output_dir"] = out.string();
    return parse_config(tree);
}

Outcome local_limit() {
    const double paper[] = {2.8e-1, 1.6e-1, 3.6e-2, 1.1e-2};
    const RunConfig cfg = preset_in("example2", scratch("local_limit"));
    RunOptions o;
    o.diagnostics = false;
    const ConvergenceResult r = convergence_study(cfg, {0.1, 0.05, 0.01, 0.004}, o);
    bool within = true;
    std::ostringstream os;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const double rel = (r.rows[i].l1_distance - paper[i]) / paper[i];
        const bool ok = std::abs(rel) <= 0.25;
        within = within && ok;
        os << "eta=" << r.rows[i].eta << " d=" << fmt(r.rows[i].l1_distance) << " (ref "
           << fmt(paper[i]) << ", " << (rel >= 0 ? "+" : "") << fmt(100.0 * rel) << "%"
           << (ok ? "" : " OUT") << ") ";
    }
    os << "decreasing=" << (r.strictly_decreasing ? "yes" : "no");
    return {within && r.strictly_decreasing, os.str()};
}

Outcome max_principle_positive() {
    const RunConfig cfg = preset_in("example3", scratch("mp_pos"));
    std::ostringstream os;
    bool pass = true;
    for (const ModelVariant v : {ModelVariant::Model1, ModelVariant::Model2}) {
        try {
            const SimulationResult r = simulate(cfg.config_for(v));
            const auto& mp = r.report->summary.max_principle;
            const bool ok = mp.ok() && mp.min_density >= -1e-12 && mp.max_density <= 1.0 + 1e-12;
            pass = pass && ok;
            os << to_string(v) << ": " << r.steps << " steps, range [" << fmt(mp.min_density) << ", "
               << fmt(mp.max_density) << "], violations " << mp.violation_count << "; ";
        } catch (const InvariantViolation& e) {
            pass = false;
            os << to_string(v) << ": " << e.what() << "; ";
        }
    }
    return {pass, os.str()};
}

Outcome max_principle_negative() {
    const RunConfig cfg = preset_in("example3", scratch("mp_neg"));
    const SimulationResult r = simulate(cfg.config_for(ModelVariant::Model0));
    double worst = -1.0;
    double when = 0.0;
    for (const auto& s : r.report->steps) {
        if (s.max_density > worst) {
            worst = s.max_density;
            when = s.time;
        }
    }
    return {worst > 1.0 + 1e-6,
            "model0 max density " + fmt(worst) + " reached at t=" + fmt(when) + " (needs > 1+1e-6)"};
}

Outcome entropy() {
    auto tree = preset_tree("example1");
    tree["final_time"] = 2.0;
    tree["output_times"] = {2.0};
    tree["output_dir"] = scratch("entropy").string();
    const RunConfig cfg = parse_config(tree);
    SimulationOptions o;
    o.monitor.kappas = kappa_grid(0.05);
    o.monitor.keep_steps = false;
    const SimulationResult r = simulate(cfg.config_for(ModelVariant::Model1), o);
    const double worst = r.report->summary.worst_entropy_residual.value_or(INFINITY);
    return {worst <= 1e-12, "model1 example1 to T=2, " + std::to_string(r.steps) +
                                " steps, 21 kappas, worst residual " + fmt(worst)};
}

Outcome conservation() {
    ModelConfig c;
    c.problem.grid = build_grid(0.0, 2.0, 0.01);
    c.problem.ramps = RampGeometry::none(c.problem.grid);
    c.problem.boundary = BoundaryConditions::make_periodic();
    c.problem.initial = InitialDatum::bump(1.0, 0.6, 0.8);
    c.problem.final_time = 1e6;
    c.kernel = {0.05, 0.0};
    c.variant = ModelVariant::Model1;
    NonlocalSolver solver(c);
    SchemeState st = solver.initial_state();
    const auto mass = [&] {
        return std::accumulate(st.field.values.begin(), st.field.values.end(), 0.0) * c.problem.grid.dx();
    };
    const double m0 = mass();
    double worst = 0.0;
    for (int n = 0; n < 10000; ++n) {
        solver.advance(st, solver.cfl_dt());
        worst = std::max(worst, std::abs(mass() - m0) / m0);
    }
    return {worst <= 1e-12, "10000 periodic steps, worst relative mass drift " + fmt(worst)};
}

Outcome bound_suite() {
    std::ostringstream os;
    bool pass = true;
    for (const std::string name : {"example1", "example2", "example3", "example4"}) {
        const RunConfig cfg = preset_in(name, scratch("bounds_" + name));
        SimulationOptions o;
        o.monitor.kappas = kappa_grid(cfg.kappa_step);
        o.monitor.keep_steps = false;
        for (const ModelVariant v : cfg.models) {
            const SimulationResult r = simulate(cfg.config_for(v), o);
            const auto& s = r.report->summary;
            const bool ok = s.l1_violations == 0 && s.tv_violations == 0;
            pass = pass && ok;
            os << name << "/" << to_string(v) << ": L1 " << s.l1_violations << ", TV "
               << s.tv_violations << " violations in " << s.steps << " steps";
            if (s.tv_violations > 0) {
                os << " (first at step " << s.first_tv_violation_step << ", two-edge bound violations "
                   << s.tv_two_edge_violations << ")";
            }
            os << "; ";
        }
    }
    return {pass, os.str()};
}

double reactive_density(double x, double eta, double delta) {
    const double u = eta * eta - (x - delta) * (x - delta);
    if (u <= 0.0) return 0.0;
    return 16.0 / (5.0 * std::numbers::pi * std::pow(eta, 6)) * std::pow(u, 2.5);
}

Outcome kernel_oracles() {
    std::mt19937 rng(7);
    const double spacings[] = {1e-3, 2e-3, 2.5e-3, 5e-3, 1e-2};
    double worst_sum = 0.0, worst_weight = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const double dx = spacings[std::uniform_int_distribution<int>(0, 4)(rng)];
        const int n = std::uniform_int_distribution<int>(1, 60)(rng);
        const int m = std::uniform_int_distribution<int>(-n, n)(rng);
        const KernelParams k{n * dx, m * dx};
        const KernelWeights w = make_kernel_weights(k, dx);
        const double cs = std::accumulate(w.convective.begin(), w.convective.end(), 0.0);
        const double rs = std::accumulate(w.reactive.weights.begin(), w.reactive.weights.end(), 0.0);
        worst_sum = std::max({worst_sum, std::abs(cs - 1.0), std::abs(rs - 1.0)});
        std::vector<double> oracle;
        for (int h = w.reactive.first_offset; h <= w.reactive.last_offset(); ++h) {
            const double a = h * dx, b = (h + 1) * dx, step = (b - a) / 10000;
            double s = 0.5 * (reactive_density(a, k.eta, k.delta) + reactive_density(b, k.eta, k.delta));
            for (int i = 1; i < 10000; ++i) s += reactive_density(a + i * step, k.eta, k.delta);
            oracle.push_back(s * step);
        }
        const double total = std::accumulate(oracle.begin(), oracle.end(), 0.0);
        for (std::size_t i = 0; i < oracle.size(); ++i) {
            worst_weight = std::max(worst_weight, std::abs(w.reactive.weights[i] - oracle[i] / total));
        }
    }
    return {worst_sum <= 1e-12 && worst_weight <= 1e-8,
            "10 random triples: worst |sum-1| " + fmt(worst_sum) + ", worst weight error " +
                fmt(worst_weight)};
}

Outcome godunov() {
    const VelocityLaw v = VelocityLaw::affine();
    int mismatches = 0;
    for (int i = 0; i < 100; ++i) {
        const double c = i / 99.0;
        mismatches += godunov_flux(c, c, v) != v.flux(c);
    }
    const double transonic = godunov_flux(0.9, 0.1, v);
    return {mismatches == 0 && transonic == 0.25,
            "sweep mismatches " + std::to_string(mismatches) + ", flux(0.9, 0.1) = " +
                format_double(transonic)};
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (!e.is_regular_file()) continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        files[fs::relative(e.path(), root).string()] = os.str();
    }
    return files;
}

Outcome determinism(const std::string& cli) {
    if (cli.empty()) return {false, "no --cli path given"};
    std::vector<std::map<std::string, std::string>> trees;
    for (const std::string tag : {"a", "b"}) {
        const fs::path dir = scratch("determinism_" + tag);
        const std::string cmd = "cd \"" + dir.string() + "\" && \"" + cli +
                                "\" run example1 > run.log 2>&1";
        if (std::system(cmd.c_str()) != 0) return {false, "CLI run failed in " + dir.string()};
        fs::remove(dir / "run.log");
        trees.push_back(read_tree(dir));
    }
    if (trees[0].empty()) return {false, "no outputs written"};
    std::vector<std::string> differing;
    for (const auto& [name, body] : trees[0]) {
        const auto it = trees[1].find(name);
        if (it == trees[1].end() || it->second != body) differing.push_back(name);
    }
    for (const auto& [name, _] : trees[1]) {
        if (!trees[0].count(name)) differing.push_back(name);
    }
    std::string detail = std::to_string(trees[0].size()) + " files compared";
    if (!differing.empty()) detail += ", differing: " + differing.front();
    return {differing.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    std::vector<std::string> wanted;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--cli" && i + 1 < argc) {
            cli = fs::absolute(argv[++i]).string();
        } else {
            wanted.push_back(a);
        }
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
        {"local_limit", local_limit},
        {"max_principle_positive", max_principle_positive},
        {"max_principle_negative", max_principle_negative},
        {"entropy", entropy},
        {"conservation", conservation},
        {"bound_suite", bound_suite},
        {"kernel_oracles", kernel_oracles},
        {"godunov", godunov},
        {"determinism", [&] { return determinism(cli); }},
    };

    for (const auto& w : wanted) {
        if (std::none_of(checks.begin(), checks.end(), [&](const auto& c) { return c.first == w; })) {
            std::fprintf(stderr, "unknown criterion: %s\n", w.c_str());
            return 2;
        }
    }

    int failures = 0;
    for (const auto& [name, check] : checks) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
