#include "rampflow/kernels.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "rampflow/alignment.hpp"
#include "rampflow/errors.hpp"

namespace rampflow {

namespace {

constexpr int kReactiveQuadratureOrder = 8;

void normalize(std::vector<double>& w) {
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) x /= total;
}

}  // namespace

void KernelParams::validate() const {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        std::ostringstream os;
        os << "kernel eta must be positive, got " << eta;
        throw ConfigError(os.str());
    }
    if (!(std::abs(delta) <= eta)) {
        std::ostringstream os;
        os << "kernel delta must lie in [-eta, eta], got delta=" << delta << " eta=" << eta;
        throw ConfigError(os.str());
    }
}

double eval_convective_kernel(double x, const KernelParams& params) {
    const double eta = params.eta;
    if (x < 0.0 || x > eta) {
        std::ostringstream os;
        os << "convective kernel evaluated at x=" << x << " outside [0, " << eta << "]";
        throw DomainError(os.str());
    }
    return 2.0 * (eta - x) / (eta * eta);
}

double convective_kernel_slope(const KernelParams& params) {
    return 2.0 / (params.eta * params.eta);
}

double eval_reactive_kernel(double x, const KernelParams& params) {
    const double eta = params.eta;
    const double delta = params.delta;
    if (x < delta - eta || x > delta + eta) {
        std::ostringstream os;
        os << "reactive kernel evaluated at x=" << x << " outside [" << delta - eta << ", "
           << delta + eta << "]";
        throw DomainError(os.str());
    }
    const double u = x - delta;
    const double base = std::max(0.0, eta * eta - u * u);
    const double eta2 = eta * eta;
    const double scale = 16.0 / (5.0 * std::numbers::pi * eta2 * eta2 * eta2);
    return scale * base * base * std::sqrt(base);
}

std::vector<double> discretize_convective_weights(const KernelParams& params, double dx) {
    params.validate();
    const auto cells = aligned_multiple(params.eta, dx);
    if (!cells || *cells < 1) {
        std::ostringstream os;
        os << "kernel eta=" << params.eta << " is not a positive integer multiple of dx=" << dx;
        throw ConfigError(os.str());
    }
    const double eta = params.eta;
    std::vector<double> gamma(static_cast<std::size_t>(*cells));
    // Exact integral of the linear kernel over [p dx, (p+1) dx].
    for (std::size_t p = 0; p < gamma.size(); ++p) {
        const double pd = static_cast<double>(p);
        gamma[p] = (2.0 / (eta * eta)) * (eta * dx - 0.5 * dx * dx * (2.0 * pd + 1.0));
    }
    normalize(gamma);
    return gamma;
}

ReactiveWeights discretize_reactive_weights(const KernelParams& params, double dx) {
    params.validate();
    const auto lo = aligned_multiple(params.delta - params.eta, dx);
    const auto hi = aligned_multiple(params.delta + params.eta, dx);
    if (!lo || !hi) {
        std::ostringstream os;
        os << "reactive kernel support [" << params.delta - params.eta << ", "
           << params.delta + params.eta << "] is not aligned to dx=" << dx;
        throw ConfigError(os.str());
    }
    const QuadratureRule rule = gauss_legendre(kReactiveQuadratureOrder);
    ReactiveWeights out;
    out.first_offset = static_cast<int>(*lo);
    out.weights.reserve(static_cast<std::size_t>(*hi - *lo));
    for (long h = *lo; h < *hi; ++h) {
        const double a = static_cast<double>(h) * dx;
        const double mid = a + 0.5 * dx;
        double sum = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            double s = mid + 0.5 * dx * rule.nodes[q];
            s = std::clamp(s, params.delta - params.eta, params.delta + params.eta);
            sum += rule.weights[q] * eval_reactive_kernel(s, params);
        }
        out.weights.push_back(0.5 * dx * sum);
    }
    normalize(out.weights);
    return out;
}

KernelWeights make_kernel_weights(const KernelParams& params, double dx) {
    return KernelWeights{discretize_convective_weights(params, dx),
                         discretize_reactive_weights(params, dx)};
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw ConfigError("Gauss-Legendre order must be at least 1");
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

}  // namespace rampflow
