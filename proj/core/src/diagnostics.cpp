#include "rampflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rampflow/errors.hpp"

namespace rampflow {

double l1_norm(std::span<const double> field, double dx) {
    double s = 0.0;
    for (double v : field) s += std::abs(v);
    return dx * s;
}

double l1_distance(std::span<const double> a, std::span<const double> b, double dx) {
    if (a.size() != b.size()) {
        std::ostringstream os;
        os << "l1_distance: fields have " << a.size() << " and " << b.size() << " cells";
        throw DataError(os.str());
    }
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += std::abs(a[j] - b[j]);
    return dx * s;
}

double total_variation(std::span<const double> field) {
    double tv = 0.0;
    for (std::size_t j = 1; j < field.size(); ++j) tv += std::abs(field[j] - field[j - 1]);
    return tv;
}

double total_variation(std::span<const double> field, const BoundaryConditions& bc) {
    double tv = total_variation(field);
    if (field.empty()) return tv;
    if (bc.periodic) return tv + std::abs(field.front() - field.back());
    if (bc.left.kind == BoundarySide::Kind::Dirichlet) tv += std::abs(field.front() - bc.left.value);
    if (bc.right.kind == BoundarySide::Kind::Dirichlet) tv += std::abs(bc.right.value - field.back());
    return tv;
}

void MaxPrincipleReport::observe(std::span<const double> field, long step, double tol) {
    for (std::size_t j = 0; j < field.size(); ++j) {
        const double v = field[j];
        max_density = std::max(max_density, v);
        min_density = std::min(min_density, v);
        if (v < -tol || v > 1.0 + tol) {
            ++violation_count;
            if (violations.size() < kMaxRecorded) {
                violations.push_back({step, static_cast<int>(j), v});
            }
        }
    }
    max_overshoot = std::max(0.0, max_density - 1.0);
    max_undershoot = std::max(0.0, -min_density);
}

MaxPrincipleReport check_max_principle(std::span<const DensityField> trajectory, double tol) {
    MaxPrincipleReport r;
    if (!trajectory.empty() && !trajectory.front().values.empty()) {
        r.max_density = r.min_density = trajectory.front().values.front();
    }
    for (std::size_t n = 0; n < trajectory.size(); ++n) {
        r.observe(trajectory[n].values, static_cast<long>(n), tol);
    }
    return r;
}

EntropyStep EntropyStep::from_trace(const StepTrace& trace, std::span<const double> next) {
    EntropyStep e;
    e.previous = trace.previous;
    e.previous_left_ghost = trace.previous_left_ghost;
    e.next = next;
    e.R = trace.R;
    e.s_on = trace.sources.on;
    e.s_off = trace.sources.off;
    e.lambda = trace.lambda;
    e.dt = trace.dt;
    return e;
}

namespace {
double sgn(double x) { return (x > 0.0) - (x < 0.0); }
}  // namespace

double entropy_residual(const EntropyStep& step, const VelocityLaw& velocity,
                        std::span<const double> kappas) {
    const std::size_t n = step.previous.size();
    if (step.next.size() != n || step.R.size() != n + 1 || step.s_on.size() != n ||
        step.s_off.size() != n) {
        throw DataError("entropy_residual: inconsistent step data sizes");
    }
    std::vector<double> vR(n + 1);
    for (std::size_t k = 0; k <= n; ++k) vR[k] = velocity.value(step.R[k]);

    double worst = -std::numeric_limits<double>::infinity();
    for (const double kappa : kappas) {
        for (std::size_t j = 0; j < n; ++j) {
            const double left = j == 0 ? step.previous_left_ghost : step.previous[j - 1];
            const double s = sgn(step.next[j] - kappa);
            const double flux_right = std::abs(step.previous[j] - kappa) * vR[j + 1];
            const double flux_left = std::abs(left - kappa) * vR[j];
            const double r = std::abs(step.next[j] - kappa) - std::abs(step.previous[j] - kappa) +
                             step.lambda * (flux_right - flux_left) -
                             step.dt * s * (step.s_on[j] - step.s_off[j]) +
                             step.lambda * s * kappa * (vR[j + 1] - vR[j]);
            worst = std::max(worst, r);
        }
    }
    return worst;
}

std::vector<double> kappa_grid(double spacing) {
    if (!(spacing > 0.0 && spacing <= 1.0)) throw ConfigError("kappa spacing must lie in (0, 1]");
    const auto count = static_cast<int>(std::round(1.0 / spacing));
    std::vector<double> k;
    for (int i = 0; i <= count; ++i) k.push_back(std::min(1.0, i * spacing));
    if (k.back() < 1.0) k.push_back(1.0);
    return k;
}

double BoundConstants::rate_over_length() const {
    return ramp_length > 0.0 ? (q_on_sup + q_off_sup) / ramp_length : 0.0;
}

double BoundConstants::C1(double t, double boundary_inflow) const {
    const double ramp = ramp_length > 0.0 ? q_on.integral(0.0, t) : 0.0;
    return rho0_l1 + ramp + boundary_inflow;
}

double BoundConstants::tv_bound(double t) const {
    return std::exp(t * H) * (rho0_tv + t * rate_over_length());
}

double BoundConstants::tv_bound_two_edges(double t) const {
    return std::exp(t * H) * (rho0_tv + 2.0 * t * rate_over_length());
}

double BoundConstants::C_xt(double T, double boundary_inflow) const {
    const double on_over_l = ramp_length > 0.0 ? q_on_sup / ramp_length : 0.0;
    return std::exp(T * H) * ((1.0 + 2.0 * script_L) * (rho0_tv + T * rate_over_length())) +
           rate_over_length() * C1(T, boundary_inflow) + on_over_l;
}

double BoundConstants::W(double T, double boundary_inflow) const {
    return (2.0 * omega0 * omega0 * v_second_sup + v_prime_sup * omega_slope) *
               C1(T, boundary_inflow) +
           2.0 * omega0 * v_prime_sup;
}

double BoundConstants::C_stab(double T, double sup_tv, double boundary_inflow) const {
    return 2.0 * q_on_sup + q_off_sup + omega0 * v_prime_sup * sup_tv + W(T, boundary_inflow);
}

BoundConstants compute_bound_constants(const ModelConfig& config) {
    const ProblemSetup& p = config.problem;
    BoundConstants c;
    c.horizon = p.final_time;
    c.omega0 = eval_convective_kernel(0.0, config.kernel);
    c.omega_slope = convective_kernel_slope(config.kernel);
    c.script_L = p.velocity.sup_value() + p.velocity.sup_derivative();
    c.v_prime_sup = p.velocity.sup_derivative();
    c.v_second_sup = p.velocity.sup_second_derivative();
    if (p.ramps.has_ramps()) {
        c.ramp_length = p.ramps.length;
        c.q_on_sup = p.q_on.sup_norm(p.final_time);
        c.q_off_sup = p.q_off.sup_norm(p.final_time);
        c.q_on = p.q_on;
    }
    const double ramp_rate =
        c.ramp_length > 0.0 ? (2.0 * c.q_on_sup + c.q_off_sup) / c.ramp_length : 0.0;
    c.H = ramp_rate + c.omega0 * c.script_L;
    const DensityField rho0 = project_initial_datum(p.initial, p.grid);
    c.rho0_l1 = l1_norm(rho0.values, p.grid.dx());
    c.rho0_tv = total_variation(rho0.values, p.boundary);
    return c;
}

DiagnosticsMonitor::DiagnosticsMonitor(const ModelConfig& config, const DensityField& initial)
    : DiagnosticsMonitor(config, initial, Options{}) {}

DiagnosticsMonitor::DiagnosticsMonitor(const ModelConfig& config, const DensityField& initial,
                                       Options options)
    : config_(&config), options_(std::move(options)) {
    report_.constants = compute_bound_constants(config);
    mass_ = l1_norm(initial.values, config.problem.grid.dx());
    report_.summary.initial_mass = mass_;
    report_.summary.final_mass = mass_;
    auto& mp = report_.summary.max_principle;
    if (!initial.values.empty()) {
        mp.max_density = mp.min_density = initial.values.front();
    }
    mp.observe(initial.values, 0, options_.max_principle_tol);
    report_.summary.sup_tv = total_variation(initial.values, config.problem.boundary);
}

void DiagnosticsMonitor::observe(const StepTrace& trace, const DensityField& next) {
    const ProblemSetup& p = config_->problem;
    const double dx = p.grid.dx();
    const std::span<const double> values = next.values;
    const std::size_t n = values.size();
    DiagnosticsSummary& sum = report_.summary;

    StepRecord rec;
    rec.step = trace.step + 1;
    rec.time = next.time;
    rec.dt = trace.dt;
    rec.min_density = *std::min_element(values.begin(), values.end());
    rec.max_density = *std::max_element(values.begin(), values.end());
    sum.max_principle.observe(values, rec.step, options_.max_principle_tol);

    double on = 0.0;
    double off = 0.0;
    double mass = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        on += trace.sources.on.empty() ? 0.0 : trace.sources.on[j];
        off += trace.sources.off.empty() ? 0.0 : trace.sources.off[j];
        mass += values[j];
    }
    mass *= dx;
    rec.mass = mass;
    rec.l1 = l1_norm(values, dx);
    rec.mass_in_on = trace.dt * dx * on;
    rec.mass_out_off = trace.dt * dx * off;
    rec.mass_in_left = trace.dt * trace.flux.front();
    rec.mass_out_right = trace.dt * trace.flux.back();
    rec.balance_error = (mass - mass_) - (rec.mass_in_on - rec.mass_out_off + rec.mass_in_left -
                                          rec.mass_out_right);
    if (!p.boundary.periodic) {
        cumulative_inflow_ +=
            std::max(rec.mass_in_left, 0.0) + std::max(-rec.mass_out_right, 0.0);
    }
    mass_ = mass;
    sum.boundary_inflow = cumulative_inflow_;

    const BoundConstants& c = report_.constants;
    rec.c1 = c.C1(rec.time, cumulative_inflow_);
    rec.tv = total_variation(values, p.boundary);
    rec.tv_bound = c.tv_bound(rec.time);
    if (rec.l1 > rec.c1 * (1.0 + options_.bound_rel_tol)) ++sum.l1_violations;
    if (rec.tv > rec.tv_bound * (1.0 + options_.bound_rel_tol)) {
        if (sum.tv_violations++ == 0) sum.first_tv_violation_step = rec.step;
    }
    if (rec.tv > c.tv_bound_two_edges(rec.time) * (1.0 + options_.bound_rel_tol)) {
        ++sum.tv_two_edge_violations;
    }
    const bool first = sum.steps == 0;
    sum.worst_l1_margin = first ? rec.l1 - rec.c1 : std::max(sum.worst_l1_margin, rec.l1 - rec.c1);
    sum.worst_tv_margin =
        first ? rec.tv - rec.tv_bound : std::max(sum.worst_tv_margin, rec.tv - rec.tv_bound);

    if (options_.entropy && config_->variant == ModelVariant::Model1 && !trace.R.empty()) {
        const double r = entropy_residual(EntropyStep::from_trace(trace, values), p.velocity,
                                          options_.kappas);
        rec.entropy_residual = r;
        sum.worst_entropy_residual =
            sum.worst_entropy_residual ? std::max(*sum.worst_entropy_residual, r) : r;
    }

    sum.steps += 1;
    sum.final_mass = mass;
    sum.total_in_on += rec.mass_in_on;
    sum.total_out_off += rec.mass_out_off;
    sum.total_in_boundary += rec.mass_in_left;
    sum.total_out_boundary += rec.mass_out_right;
    sum.worst_balance_error = std::max(sum.worst_balance_error, std::abs(rec.balance_error));
    sum.sup_tv = std::max(sum.sup_tv, rec.tv);
    if (options_.keep_steps) report_.steps.push_back(rec);
}

namespace {

double rate_difference_l1(const RampRate& a, const RampRate& b, double T) {
    constexpr int kPanels = 20000;
    if (T <= 0.0) return 0.0;
    const double h = T / kPanels;
    double s = 0.0;
    for (int i = 0; i <= kPanels; ++i) {
        const double w = (i == 0 || i == kPanels) ? 0.5 : 1.0;
        s += w * std::abs(a.value(i * h) - b.value(i * h));
    }
    return s * h;
}

}  // namespace

StabilityComparison evaluate_stability(const ModelConfig& a, std::span<const double> a_initial,
                                       std::span<const double> a_final, double a_sup_tv,
                                       const ModelConfig& b, std::span<const double> b_initial,
                                       std::span<const double> b_final, double b_sup_tv) {
    if (a.problem.grid.n_cells() != b.problem.grid.n_cells()) {
        throw DataError("stability comparison requires runs on the same grid");
    }
    const double dx = a.problem.grid.dx();
    const double T = std::max(a.problem.final_time, b.problem.final_time);
    const BoundConstants ca = compute_bound_constants(a);
    const BoundConstants cb = compute_bound_constants(b);
    StabilityComparison out;
    out.W = std::max(ca.W(T), cb.W(T));
    out.C = std::max(ca.C_stab(T, a_sup_tv), cb.C_stab(T, b_sup_tv));
    out.lhs = l1_distance(a_final, b_final, dx);
    const double data = l1_distance(a_initial, b_initial, dx) +
                        rate_difference_l1(a.problem.q_on, b.problem.q_on, T) +
                        rate_difference_l1(a.problem.q_off, b.problem.q_off, T);
    out.rhs = data > 0.0 ? std::exp(out.C * T) * data : 0.0;
    return out;
}

}  // namespace rampflow
