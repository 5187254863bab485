#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rampflow/boundary.hpp"
#include "rampflow/grid.hpp"
#include "rampflow/kernels.hpp"
#include "rampflow/velocity.hpp"

namespace rampflow {

/// Choice of on-ramp source term.
///   Model0: 1_on q (1 - R_on)
///   Model1: 1_on q (1 - rho)(1 - R_on)
///   Model2: 1_on q (1 - max(rho, R_on))
enum class ModelVariant { Model0, Model1, Model2 };

std::string_view to_string(ModelVariant v);
/// Accepts "model0", "model1", "model2" (or "0", "1", "2").
std::optional<ModelVariant> parse_model_variant(std::string_view text);

/// Everything shared by the nonlocal scheme and the local reference solver.
struct ProblemSetup {
    Grid grid;
    RampGeometry ramps;
    RampRate q_on;
    RampRate q_off;
    VelocityLaw velocity = VelocityLaw::affine();
    BoundaryConditions boundary;
    InitialDatum initial;
    double final_time = 0.0;
    std::vector<double> output_times;  // sorted, each in [0, final_time]
    double cfl_safety = 0.9;           // in (0, 1]

    void validate() const;
};

struct ModelConfig {
    ProblemSetup problem;
    KernelParams kernel;
    ModelVariant variant = ModelVariant::Model1;
};

inline constexpr double kMaxPrincipleSlack = 1e-12;

/// dt = safety * min{ dx / (gamma_0 |v'| + |v|), L / (|q_on| + |q_off|) }.
/// The ramp branch is +infinity when there are no ramps or both rates vanish.
double compute_cfl_dt(const VelocityLaw& velocity, std::span<const double> convective_weights,
                      const RampGeometry& ramps, double q_on_sup, double q_off_sup, double dx,
                      double safety);

/// Interface averages R[k] = R_{k-1/2} = sum_p gamma_p rho_{k+p}, k = 0..n.
/// `rho` needs at least gamma.size() right ghost cells.
std::vector<double> convolution_flux(const PaddedField& rho, std::span<const double> gamma);

/// R_on,j = sum_h gamma_hat_h rho_{j+h} for cells j in [first, last].
std::vector<double> convolution_reactive(const PaddedField& rho, const ReactiveWeights& weights,
                                         int first, int last);
/// Full-domain variant, j = 0..n-1.
std::vector<double> convolution_reactive(const PaddedField& rho, const ReactiveWeights& weights);

/// Upwind interface fluxes F[k] = rho_{k-1} v(R[k]), k = 0..n.
std::vector<double> interface_fluxes(const PaddedField& rho, std::span<const double> R,
                                     const VelocityLaw& velocity);

/// rho_j - lambda (rho_j v(R_{j+1/2}) - rho_{j-1} v(R_{j-1/2})).
std::vector<double> convective_step(const PaddedField& rho, std::span<const double> R,
                                    double lambda, const VelocityLaw& velocity);

double source_on(ModelVariant variant, double rho, double r_on, double indicator, double q_on);
double source_off(double rho, double indicator, double q_off);

/// Per-cell source values of one splitting step.
struct SourceTerms {
    std::vector<double> on;
    std::vector<double> off;
};

/// rho^{n+1} = rho^{n+1/2} + dt (S_on - S_off). `r_on` covers the on-ramp cells only
/// (ramps.on_first .. ramps.on_last) and may be empty when there are no ramps.
std::vector<double> source_step(std::span<const double> half, std::span<const double> r_on,
                                const RampGeometry& ramps, double q_on, double q_off, double dt,
                                ModelVariant variant, SourceTerms* terms = nullptr);

/// Intermediate quantities of one committed step.
struct StepTrace {
    long step = 0;      // index n of the step t^n -> t^{n+1}
    double time = 0.0;  // t^n
    double dt = 0.0;
    double lambda = 0.0;
    double q_on = 0.0;   // q_on^{n+1/2}
    double q_off = 0.0;  // q_off^{n+1/2}
    std::vector<double> previous;  // rho^n
    double previous_left_ghost = 0.0;
    std::vector<double> R;     // n + 1 interface averages
    std::vector<double> flux;  // n + 1 interface fluxes
    std::vector<double> half;  // rho^{n+1/2}
    std::vector<double> r_on;  // on-ramp cells only
    SourceTerms sources;
};

struct SchemeState {
    DensityField field;
    std::vector<double> half;
    long step = 0;

    double time() const { return field.time; }
};

/// Upwind nonlocal scheme with operator splitting for the ramp sources.
class NonlocalSolver {
public:
    explicit NonlocalSolver(ModelConfig config);

    const ModelConfig& config() const { return config_; }
    const KernelWeights& weights() const { return weights_; }
    double cfl_dt() const { return dt_; }

    SchemeState initial_state() const;

    /// One full step of size dt. Throws InvariantViolation if Model 1 or 2 leaves
    /// [0, 1] beyond kMaxPrincipleSlack.
    void advance(SchemeState& state, double dt, StepTrace* trace = nullptr);

private:
    ModelConfig config_;
    KernelWeights weights_;
    double dt_ = 0.0;
    PaddedField rho_;
    PaddedField half_;
};

}  // namespace rampflow
