#include "rampflow/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rampflow/errors.hpp"

namespace rampflow {

namespace {
constexpr int kNormSamples = 20001;
}

VelocityLaw VelocityLaw::affine(double v_max) {
    if (!(v_max > 0.0 && v_max <= 1.0)) {
        std::ostringstream os;
        os << "affine velocity needs v_max in (0, 1], got " << v_max;
        throw ConfigError(os.str());
    }
    VelocityLaw law;
    law.kind_ = Kind::Affine;
    law.v_max_ = v_max;
    law.sup_v_ = v_max;
    law.sup_dv_ = v_max;
    law.sup_d2v_ = 0.0;
    law.rho_star_ = 0.5;
    law.max_df_ = v_max;
    return law;
}

VelocityLaw VelocityLaw::tabulated(std::vector<double> rho, std::vector<double> v) {
    if (rho.size() < 2 || rho.size() != v.size()) {
        throw ConfigError("tabulated velocity needs at least two (rho, v) nodes of equal count");
    }
    if (rho.front() != 0.0 || rho.back() != 1.0) {
        throw ConfigError("tabulated velocity nodes must span [0, 1] exactly");
    }
    for (std::size_t i = 1; i < rho.size(); ++i) {
        if (!(rho[i] > rho[i - 1])) throw ConfigError("tabulated velocity nodes must increase");
        if (v[i] > v[i - 1]) throw ConfigError("tabulated velocity must be nonincreasing");
    }
    for (double x : v) {
        if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("tabulated velocity values must lie in [0, 1]");
    }
    if (!(v.front() > 0.0)) throw ConfigError("tabulated velocity must be positive at rho = 0");

    VelocityLaw law;
    law.kind_ = Kind::Tabulated;
    law.v_max_ = v.front();
    law.rho_ = std::move(rho);
    law.v_ = std::move(v);

    // Fritsch-Carlson monotone slopes.
    const std::size_t n = law.rho_.size();
    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        secant[i] = (law.v_[i + 1] - law.v_[i]) / (law.rho_[i + 1] - law.rho_[i]);
    }
    law.slope_.assign(n, 0.0);
    law.slope_.front() = secant.front();
    law.slope_.back() = secant.back();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (secant[i - 1] * secant[i] <= 0.0) {
            law.slope_[i] = 0.0;
        } else {
            const double h0 = law.rho_[i] - law.rho_[i - 1];
            const double h1 = law.rho_[i + 1] - law.rho_[i];
            const double w1 = 2.0 * h1 + h0;
            const double w2 = h1 + 2.0 * h0;
            law.slope_[i] = (w1 + w2) / (w1 / secant[i - 1] + w2 / secant[i]);
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (secant[i] == 0.0) {
            law.slope_[i] = 0.0;
            law.slope_[i + 1] = 0.0;
            continue;
        }
        const double a = law.slope_[i] / secant[i];
        const double b = law.slope_[i + 1] / secant[i];
        const double r = a * a + b * b;
        if (r > 9.0) {
            const double tau = 3.0 / std::sqrt(r);
            law.slope_[i] = tau * a * secant[i];
            law.slope_[i + 1] = tau * b * secant[i];
        }
    }
    law.cache_norms();
    return law;
}

int VelocityLaw::segment(double rho) const {
    const auto it = std::upper_bound(rho_.begin(), rho_.end(), rho);
    const auto i = static_cast<int>(it - rho_.begin()) - 1;
    return std::clamp(i, 0, static_cast<int>(rho_.size()) - 2);
}

double VelocityLaw::value(double rho) const {
    if (kind_ == Kind::Affine) return v_max_ * (1.0 - rho);
    const int i = segment(rho);
    const auto k = static_cast<std::size_t>(i);
    const double h = rho_[k + 1] - rho_[k];
    const double t = (rho - rho_[k]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * v_[k] + (t3 - 2 * t2 + t) * h * slope_[k] +
           (-2 * t3 + 3 * t2) * v_[k + 1] + (t3 - t2) * h * slope_[k + 1];
}

double VelocityLaw::derivative(double rho) const {
    if (kind_ == Kind::Affine) return -v_max_;
    const auto k = static_cast<std::size_t>(segment(rho));
    const double h = rho_[k + 1] - rho_[k];
    const double t = (rho - rho_[k]) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * v_[k] + (-6 * t2 + 6 * t) * v_[k + 1]) / h +
           (3 * t2 - 4 * t + 1) * slope_[k] + (3 * t2 - 2 * t) * slope_[k + 1];
}

double VelocityLaw::second_derivative(double rho) const {
    if (kind_ == Kind::Affine) return 0.0;
    const auto k = static_cast<std::size_t>(segment(rho));
    const double h = rho_[k + 1] - rho_[k];
    const double t = (rho - rho_[k]) / h;
    return ((12 * t - 6) * v_[k] + (-12 * t + 6) * v_[k + 1]) / (h * h) +
           ((6 * t - 4) * slope_[k] + (6 * t - 2) * slope_[k + 1]) / h;
}

void VelocityLaw::cache_norms() {
    sup_v_ = sup_dv_ = sup_d2v_ = max_df_ = 0.0;
    double best_flux = -1.0;
    for (int s = 0; s < kNormSamples; ++s) {
        const double r = static_cast<double>(s) / (kNormSamples - 1);
        const double v = value(r);
        const double dv = derivative(r);
        sup_v_ = std::max(sup_v_, std::abs(v));
        sup_dv_ = std::max(sup_dv_, std::abs(dv));
        sup_d2v_ = std::max(sup_d2v_, std::abs(second_derivative(r)));
        max_df_ = std::max(max_df_, std::abs(v + r * dv));
        if (r * v > best_flux) {
            best_flux = r * v;
            rho_star_ = r;
        }
    }
}

}  // namespace rampflow
