#include "rampflow/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rampflow/errors.hpp"

namespace rampflow {

std::string_view to_string(ModelVariant v) {
    switch (v) {
        case ModelVariant::Model0: return "model0";
        case ModelVariant::Model1: return "model1";
        case ModelVariant::Model2: return "model2";
    }
    return "unknown";
}

std::optional<ModelVariant> parse_model_variant(std::string_view text) {
    if (text == "model0" || text == "0") return ModelVariant::Model0;
    if (text == "model1" || text == "1") return ModelVariant::Model1;
    if (text == "model2" || text == "2") return ModelVariant::Model2;
    return std::nullopt;
}

void ProblemSetup::validate() const {
    if (grid.n_cells() < 1) throw ConfigError("problem has no grid");
    const auto n = static_cast<std::size_t>(grid.n_cells());
    if (ramps.indicator_on.size() != n || ramps.indicator_off.size() != n) {
        throw ConfigError("ramp geometry was built for a different grid");
    }
    boundary.validate();
    if (!(final_time >= 0.0) || !std::isfinite(final_time)) {
        throw ConfigError("final time must be nonnegative");
    }
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) {
        std::ostringstream os;
        os << "CFL safety factor must lie in (0, 1], got " << cfl_safety;
        throw ConfigError(os.str());
    }
    for (std::size_t i = 0; i < output_times.size(); ++i) {
        const double t = output_times[i];
        if (!(t >= 0.0 && t <= final_time)) {
            std::ostringstream os;
            os << "output time " << t << " outside [0, " << final_time << "]";
            throw ConfigError(os.str());
        }
        if (i > 0 && !(t > output_times[i - 1])) {
            throw ConfigError("output times must be strictly increasing");
        }
    }
}

double compute_cfl_dt(const VelocityLaw& velocity, std::span<const double> convective_weights,
                      const RampGeometry& ramps, double q_on_sup, double q_off_sup, double dx,
                      double safety) {
    if (convective_weights.empty()) throw ConfigError("empty convective stencil");
    const double convective =
        dx / (convective_weights[0] * velocity.sup_derivative() + velocity.sup_value());
    double ramp = std::numeric_limits<double>::infinity();
    const double rates = q_on_sup + q_off_sup;
    if (ramps.has_ramps() && rates > 0.0) ramp = ramps.length / rates;
    return safety * std::min(convective, ramp);
}

std::vector<double> convolution_flux(const PaddedField& rho, std::span<const double> gamma) {
    const int n = rho.size();
    const int taps = static_cast<int>(gamma.size());
    if (rho.pad_right() < taps) throw std::logic_error("convolution_flux: ghost layer too narrow");
    std::vector<double> R(static_cast<std::size_t>(n + 1), 0.0);
    // p outer keeps the per-interface summation order fixed and the inner loop contiguous.
    for (int p = 0; p < taps; ++p) {
        const double g = gamma[static_cast<std::size_t>(p)];
        const double* src = rho.at(p);
        for (int k = 0; k <= n; ++k) R[static_cast<std::size_t>(k)] += g * src[k];
    }
    return R;
}

std::vector<double> convolution_reactive(const PaddedField& rho, const ReactiveWeights& weights,
                                         int first, int last) {
    if (last < first) return {};
    if (first + weights.first_offset < -rho.pad_left() ||
        last + weights.last_offset() >= rho.size() + rho.pad_right()) {
        throw std::logic_error("convolution_reactive: ghost layer too narrow");
    }
    std::vector<double> out(static_cast<std::size_t>(last - first + 1), 0.0);
    for (std::size_t k = 0; k < weights.weights.size(); ++k) {
        const double g = weights.weights[k];
        const double* src = rho.at(first + weights.first_offset + static_cast<int>(k));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += g * src[i];
    }
    return out;
}

std::vector<double> convolution_reactive(const PaddedField& rho, const ReactiveWeights& weights) {
    return convolution_reactive(rho, weights, 0, rho.size() - 1);
}

std::vector<double> interface_fluxes(const PaddedField& rho, std::span<const double> R,
                                     const VelocityLaw& velocity) {
    const int n = rho.size();
    if (static_cast<int>(R.size()) != n + 1) throw std::logic_error("interface_fluxes: size mismatch");
    if (rho.pad_left() < 1) throw std::logic_error("interface_fluxes: missing left ghost");
    std::vector<double> F(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
        F[static_cast<std::size_t>(k)] = rho[k - 1] * velocity.value(R[static_cast<std::size_t>(k)]);
    }
    return F;
}

namespace {

std::vector<double> flux_difference_update(const PaddedField& rho, std::span<const double> F,
                                           double lambda) {
    const int n = rho.size();
    std::vector<double> half(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const auto k = static_cast<std::size_t>(j);
        half[k] = rho[j] - lambda * (F[k + 1] - F[k]);
    }
    return half;
}

}  // namespace

std::vector<double> convective_step(const PaddedField& rho, std::span<const double> R,
                                    double lambda, const VelocityLaw& velocity) {
    return flux_difference_update(rho, interface_fluxes(rho, R, velocity), lambda);
}

double source_on(ModelVariant variant, double rho, double r_on, double indicator, double q_on) {
    switch (variant) {
        case ModelVariant::Model0: return indicator * q_on * (1.0 - r_on);
        case ModelVariant::Model1: return indicator * q_on * (1.0 - rho) * (1.0 - r_on);
        case ModelVariant::Model2: return indicator * q_on * (1.0 - std::max(rho, r_on));
    }
    return 0.0;
}

double source_off(double rho, double indicator, double q_off) { return indicator * q_off * rho; }

std::vector<double> source_step(std::span<const double> half, std::span<const double> r_on,
                                const RampGeometry& ramps, double q_on, double q_off, double dt,
                                ModelVariant variant, SourceTerms* terms) {
    const std::size_t n = half.size();
    std::vector<double> next(half.begin(), half.end());
    if (terms) {
        terms->on.assign(n, 0.0);
        terms->off.assign(n, 0.0);
    }
    if (!ramps.has_ramps()) return next;
    if (r_on.size() != static_cast<std::size_t>(ramps.cells)) {
        throw std::logic_error("source_step: r_on must cover the on-ramp cells");
    }
    for (int i = 0; i < ramps.cells; ++i) {
        const auto j = static_cast<std::size_t>(ramps.on_first + i);
        const double s = source_on(variant, half[j], r_on[static_cast<std::size_t>(i)],
                                   ramps.indicator_on[j], q_on);
        next[j] += dt * s;
        if (terms) terms->on[j] = s;
    }
    for (int i = 0; i < ramps.cells; ++i) {
        const auto j = static_cast<std::size_t>(ramps.off_first + i);
        const double s = source_off(half[j], ramps.indicator_off[j], q_off);
        next[j] -= dt * s;
        if (terms) terms->off[j] = s;
    }
    return next;
}

NonlocalSolver::NonlocalSolver(ModelConfig config) : config_(std::move(config)) {
    const ProblemSetup& p = config_.problem;
    p.validate();
    config_.kernel.validate();
    weights_ = make_kernel_weights(config_.kernel, p.grid.dx());
    dt_ = compute_cfl_dt(p.velocity, weights_.convective, p.ramps, p.q_on.sup_norm(p.final_time),
                         p.q_off.sup_norm(p.final_time), p.grid.dx(), p.cfl_safety);
    const int taps = static_cast<int>(weights_.convective.size());
    const int pad_left = std::max(1, -weights_.reactive.first_offset);
    const int pad_right = std::max(taps, weights_.reactive.last_offset());
    rho_ = PaddedField(p.grid.n_cells(), pad_left, pad_right);
    half_ = PaddedField(p.grid.n_cells(), pad_left, pad_right);
}

SchemeState NonlocalSolver::initial_state() const {
    SchemeState s;
    s.field = project_initial_datum(config_.problem.initial, config_.problem.grid);
    s.half = s.field.values;
    return s;
}

void NonlocalSolver::advance(SchemeState& state, double dt, StepTrace* trace) {
    const ProblemSetup& p = config_.problem;
    const double t0 = state.field.time;
    const double lambda = dt / p.grid.dx();

    rho_.assign_interior(state.field.values);
    rho_.fill_ghosts(p.boundary);
    std::vector<double> R = convolution_flux(rho_, weights_.convective);
    std::vector<double> F = interface_fluxes(rho_, R, p.velocity);
    std::vector<double> half = flux_difference_update(rho_, F, lambda);

    std::vector<double> r_on;
    if (p.ramps.has_ramps()) {
        half_.assign_interior(half);
        half_.fill_ghosts(p.boundary);
        r_on = convolution_reactive(half_, weights_.reactive, p.ramps.on_first, p.ramps.on_last());
    }
    const double q_on = p.q_on.average(t0, t0 + dt);
    const double q_off = p.q_off.average(t0, t0 + dt);
    SourceTerms terms;
    std::vector<double> next = source_step(half, r_on, p.ramps, q_on, q_off, dt, config_.variant,
                                           trace ? &terms : nullptr);

    if (config_.variant != ModelVariant::Model0) {
        for (std::size_t j = 0; j < next.size(); ++j) {
            if (next[j] < -kMaxPrincipleSlack || next[j] > 1.0 + kMaxPrincipleSlack) {
                std::ostringstream os;
                os.precision(17);
                os << to_string(config_.variant) << ": density " << next[j] << " in cell " << j
                   << " at step " << state.step + 1 << " (t=" << t0 + dt << ") leaves [0, 1]";
                throw InvariantViolation(os.str());
            }
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
        trace->R = std::move(R);
        trace->flux = std::move(F);
        trace->half = half;
        trace->r_on = std::move(r_on);
        trace->sources = std::move(terms);
    }
    state.half = std::move(half);
    state.field.values = std::move(next);
    state.field.time = t0 + dt;
    ++state.step;
}

}  // namespace rampflow
