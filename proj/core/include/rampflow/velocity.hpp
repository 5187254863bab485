#pragma once

#include <vector>

namespace rampflow {

/// Nonincreasing velocity v : [0, 1] -> [0, 1] with cached sup-norms.
///
/// Either affine, v = v_max (1 - rho), or a monotone piecewise-cubic (Fritsch-Carlson)
/// interpolant through tabulated nodes spanning [0, 1].
class VelocityLaw {
public:
    enum class Kind { Affine, Tabulated };

    static VelocityLaw affine(double v_max = 1.0);
    static VelocityLaw tabulated(std::vector<double> rho, std::vector<double> v);

    Kind kind() const { return kind_; }
    double v_max() const { return v_max_; }
    const std::vector<double>& nodes() const { return rho_; }
    const std::vector<double>& node_values() const { return v_; }

    double operator()(double rho) const { return value(rho); }
    double value(double rho) const;
    double derivative(double rho) const;
    double second_derivative(double rho) const;

    /// f(rho) = rho v(rho)
    double flux(double rho) const { return rho * value(rho); }

    double sup_value() const { return sup_v_; }
    double sup_derivative() const { return sup_dv_; }
    double sup_second_derivative() const { return sup_d2v_; }
    /// Maximizer of f on [0, 1].
    double critical_density() const { return rho_star_; }
    /// max |f'| on [0, 1].
    double max_flux_slope() const { return max_df_; }

private:
    VelocityLaw() = default;
    void cache_norms();
    int segment(double rho) const;

    Kind kind_ = Kind::Affine;
    double v_max_ = 1.0;
    std::vector<double> rho_;
    std::vector<double> v_;
    std::vector<double> slope_;
    double sup_v_ = 0.0;
    double sup_dv_ = 0.0;
    double sup_d2v_ = 0.0;
    double rho_star_ = 0.5;
    double max_df_ = 0.0;
};

}  // namespace rampflow
