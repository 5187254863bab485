#pragma once

#include <span>
#include <vector>

namespace rampflow {

/// Support radius and shift shared by the convective and reactive kernels.
struct KernelParams {
    double eta = 0.0;    // support radius
    double delta = 0.0;  // reactive shift, |delta| <= eta

    /// Throws ConfigError unless eta > 0 and delta in [-eta, eta].
    void validate() const;
};

/// Convective kernel  w(x) = 2(eta - x)/eta^2  on [0, eta].
double eval_convective_kernel(double x, const KernelParams& params);

/// Sup of |w'| on [0, eta]; the convective kernel is linear so this is 2/eta^2.
double convective_kernel_slope(const KernelParams& params);

/// Reactive kernel  (16/(5 pi eta^6)) (eta^2 - (x - delta)^2)^{5/2}  on [delta-eta, delta+eta].
double eval_reactive_kernel(double x, const KernelParams& params);

/// Cell-integrated convective weights gamma_p, p = 0..N-1 with eta = N dx.
///
/// gamma_p is the exact integral of the kernel over [p dx, (p+1) dx], renormalized
/// so the weights sum to one. Throws ConfigError when eta is not a multiple of dx.
std::vector<double> discretize_convective_weights(const KernelParams& params, double dx);

struct ReactiveWeights {
    std::vector<double> weights;  // gamma_hat_h for h = first_offset, first_offset+1, ...
    int first_offset = 0;

    int last_offset() const { return first_offset + static_cast<int>(weights.size()) - 1; }
};

/// Cell-integrated reactive weights over [h dx, (h+1) dx] for
/// h = floor((delta-eta)/dx) .. floor((delta+eta)/dx) - 1.
///
/// Each cell uses an 8-point Gauss-Legendre rule, then the set is renormalized.
/// delta - eta and delta + eta must both be multiples of dx.
ReactiveWeights discretize_reactive_weights(const KernelParams& params, double dx);

/// Both discrete kernels for one mesh.
struct KernelWeights {
    std::vector<double> convective;
    ReactiveWeights reactive;
};

KernelWeights make_kernel_weights(const KernelParams& params, double dx);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureRule gauss_legendre(int n);

}  // namespace rampflow
