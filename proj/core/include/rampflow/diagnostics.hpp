#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rampflow/scheme.hpp"

namespace rampflow {

double l1_norm(std::span<const double> field, double dx);
/// dx * sum |a_j - b_j|; throws DataError on a size mismatch.
double l1_distance(std::span<const double> a, std::span<const double> b, double dx);

/// sum_j |rho_{j+1} - rho_j| over interior cells.
double total_variation(std::span<const double> field);

/// Total variation of the field extended by its ghost states: Dirichlet sides add the jump
/// to the prescribed value, periodic adds the wrap-around jump, outflow adds nothing.
double total_variation(std::span<const double> field, const BoundaryConditions& bc);

struct MaxPrincipleViolation {
    long step = 0;
    int cell = 0;
    double value = 0.0;
};

struct MaxPrincipleReport {
    std::vector<MaxPrincipleViolation> violations;  // first kMaxRecorded only
    long violation_count = 0;
    double max_density = 0.0;
    double min_density = 0.0;
    double max_overshoot = 0.0;   // max(0, max rho - 1)
    double max_undershoot = 0.0;  // max(0, -min rho)

    static constexpr std::size_t kMaxRecorded = 64;

    bool ok() const { return violation_count == 0; }
    /// Accumulates one time level.
    void observe(std::span<const double> field, long step, double tol);
};

/// Checks every field of a trajectory (index = step) against [-tol, 1 + tol].
MaxPrincipleReport check_max_principle(std::span<const DensityField> trajectory, double tol);

/// Inputs of the discrete entropy inequality for one committed step.
struct EntropyStep {
    std::span<const double> previous;  // rho^n, n cells
    double previous_left_ghost = 0.0;  // rho^n_{-1}
    std::span<const double> next;      // rho^{n+1}
    std::span<const double> R;         // n + 1 interface averages
    std::span<const double> s_on;
    std::span<const double> s_off;
    double lambda = 0.0;
    double dt = 0.0;

    static EntropyStep from_trace(const StepTrace& trace, std::span<const double> next);
};

/// Largest left-hand side over cells and kappa of
///   |rho^{n+1}-k| - |rho^n-k| + lambda (F^k_{j+1/2}(rho_j) - F^k_{j-1/2}(rho_{j-1}))
///   - dt sgn(rho^{n+1}-k)(S_on - S_off) + lambda sgn(rho^{n+1}-k) k (v(R_{j+1/2}) - v(R_{j-1/2}))
/// with F^k_{j+1/2}(u) = |u - k| v(R_{j+1/2}). Nonpositive for an entropy-satisfying step.
double entropy_residual(const EntropyStep& step, const VelocityLaw& velocity,
                        std::span<const double> kappas);

/// {0, h, 2h, ..., 1}.
std::vector<double> kappa_grid(double spacing);

/// Constants of the a-priori estimates, evaluated from the configuration.
struct BoundConstants {
    double omega0 = 0.0;        // w_eta(0) = 2/eta
    double omega_slope = 0.0;   // sup |w_eta'| = 2/eta^2
    double script_L = 0.0;      // |v| + |v'|
    double H = 0.0;             // (1/L)(2|q_on| + |q_off|) + w_eta(0) script_L
    double q_on_sup = 0.0;
    double q_off_sup = 0.0;
    double ramp_length = 0.0;   // 0 without ramps
    double v_prime_sup = 0.0;
    double v_second_sup = 0.0;
    double rho0_l1 = 0.0;
    double rho0_tv = 0.0;
    double horizon = 0.0;       // T used for sup-norms
    RampRate q_on;

    /// (|q_on| + |q_off|)/L, zero without ramps.
    double rate_over_length() const;
    /// |rho0|_L1 + |q_on|_L1(0,t) + boundary_inflow (mass entering through the domain ends).
    double C1(double t, double boundary_inflow = 0.0) const;
    /// e^{tH}(TV(rho0) + t (|q_on|+|q_off|)/L)
    double tv_bound(double t) const;
    /// Same estimate with the ramp forcing counted at both edges of each ramp:
    /// e^{tH}(TV(rho0) + 2t (|q_on|+|q_off|)/L).
    double tv_bound_two_edges(double t) const;
    double C_xt(double T, double boundary_inflow = 0.0) const;
    double W(double T, double boundary_inflow = 0.0) const;
    /// Stability constant with the discrete sup_t TV standing in for the exact one.
    double C_stab(double T, double sup_tv, double boundary_inflow = 0.0) const;
};

BoundConstants compute_bound_constants(const ModelConfig& config);

/// One row per committed step.
struct StepRecord {
    long step = 0;  // n + 1
    double time = 0.0;
    double dt = 0.0;
    double min_density = 0.0;
    double max_density = 0.0;
    double l1 = 0.0;
    double c1 = 0.0;
    double tv = 0.0;
    double tv_bound = 0.0;
    std::optional<double> entropy_residual;
    double mass = 0.0;
    double mass_in_on = 0.0;     // this step
    double mass_out_off = 0.0;
    double mass_in_left = 0.0;   // flux through x_left
    double mass_out_right = 0.0; // flux through x_right
    double balance_error = 0.0;  // mass change minus ledger
};

struct DiagnosticsSummary {
    long steps = 0;
    MaxPrincipleReport max_principle;
    long l1_violations = 0;
    long tv_violations = 0;
    long tv_two_edge_violations = 0;  // against tv_bound_two_edges
    long first_tv_violation_step = 0;  // 0 when none
    double worst_l1_margin = 0.0;   // max (l1 - c1)
    double worst_tv_margin = 0.0;   // max (tv - tv_bound)
    std::optional<double> worst_entropy_residual;
    double worst_balance_error = 0.0;
    double initial_mass = 0.0;
    double final_mass = 0.0;
    double total_in_on = 0.0;
    double total_out_off = 0.0;
    double total_in_boundary = 0.0;
    double total_out_boundary = 0.0;
    double boundary_inflow = 0.0;  // mass entering through either end, used by C1
    double sup_tv = 0.0;
};

struct DiagnosticsReport {
    BoundConstants constants;
    std::vector<StepRecord> steps;
    DiagnosticsSummary summary;
};

/// Streams step traces into a DiagnosticsReport.
class DiagnosticsMonitor {
public:
    struct Options {
        double max_principle_tol = kMaxPrincipleSlack;
        /// Slack on the L1 and TV inequalities (relative to the bound).
        double bound_rel_tol = 1e-12;
        std::vector<double> kappas = kappa_grid(0.05);
        /// Entropy residuals are evaluated for Model 1 only.
        bool entropy = true;
        bool keep_steps = true;
    };

    DiagnosticsMonitor(const ModelConfig& config, const DensityField& initial, Options options);
    DiagnosticsMonitor(const ModelConfig& config, const DensityField& initial);

    void observe(const StepTrace& trace, const DensityField& next);
    const DiagnosticsReport& report() const { return report_; }
    DiagnosticsReport take() { return std::move(report_); }

private:
    const ModelConfig* config_;
    Options options_;
    DiagnosticsReport report_;
    double mass_ = 0.0;
    double cumulative_inflow_ = 0.0;
};

/// Both sides of the L1 stability estimate for two runs on the same grid.
struct StabilityComparison {
    double lhs = 0.0;  // |rho(T) - rho~(T)|_L1
    double rhs = 0.0;  // e^{C T}(|rho0 - rho~0| + |q_on - q~_on|_L1 + |q_off - q~_off|_L1)
    double C = 0.0;
    double W = 0.0;
};

StabilityComparison evaluate_stability(const ModelConfig& a, std::span<const double> a_initial,
                                       std::span<const double> a_final, double a_sup_tv,
                                       const ModelConfig& b, std::span<const double> b_initial,
                                       std::span<const double> b_final, double b_sup_tv);

}  // namespace rampflow
