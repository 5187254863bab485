#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace rampflow {

/// Uniform mesh on [x_left, x_right]; interfaces at x_left + j*dx, j = 0..n_cells.
class Grid {
public:
    Grid() = default;

    double x_left() const { return x_left_; }
    double x_right() const { return x_right_; }
    double dx() const { return dx_; }
    int n_cells() const { return n_cells_; }

    double cell_center(int j) const { return x_left_ + (j + 0.5) * dx_; }
    /// Left interface of cell j (x_{j-1/2}); interface(n_cells) is x_right.
    double interface(int j) const { return x_left_ + j * dx_; }
    std::vector<double> cell_centers() const;

    /// Index of the interface at x, or nullopt when x is not on an interface.
    std::optional<int> interface_index(double x) const;

    friend Grid build_grid(double x_left, double x_right, double dx);

private:
    double x_left_ = 0.0;
    double x_right_ = 0.0;
    double dx_ = 0.0;
    int n_cells_ = 0;
};

/// Throws ConfigError unless x_left < x_right, dx > 0 and the width is a multiple of dx.
Grid build_grid(double x_left, double x_right, double dx);

struct Interval {
    double start = 0.0;
    double end = 0.0;
};

/// One on-ramp and one off-ramp of common length L, both aligned with cell interfaces.
///
/// Indicator arrays hold 1/L on ramp cells and zero elsewhere, so dx * sum = 1.
struct RampGeometry {
    Interval on;
    Interval off;
    double length = 0.0;
    int on_first = 0;   // first on-ramp cell
    int off_first = 0;  // first off-ramp cell
    int cells = 0;      // ell = L/dx, cells per ramp
    std::vector<double> indicator_on;
    std::vector<double> indicator_off;

    bool has_ramps() const { return cells > 0; }
    int on_last() const { return on_first + cells - 1; }
    int off_last() const { return off_first + cells - 1; }

    /// Geometry without ramps: zero indicators everywhere.
    static RampGeometry none(const Grid& grid);
};

RampGeometry build_ramps(const Grid& grid, Interval on, Interval off, double length);

/// Ramp inflow/outflow rate q(t) >= 0.
class RampRate {
public:
    struct Constant {
        double value = 0.0;
    };
    /// a * (sin(pi t) + 1) / 2
    struct Sinusoidal {
        double amplitude = 1.0;
    };
    /// Piecewise linear through (times[i], values[i]); constant beyond the ends.
    struct Tabulated {
        std::vector<double> times;
        std::vector<double> values;
    };
    using Schedule = std::variant<Constant, Sinusoidal, Tabulated>;

    RampRate() : schedule_(Constant{0.0}) {}
    explicit RampRate(Schedule schedule);

    static RampRate constant(double value) { return RampRate(Constant{value}); }
    static RampRate sinusoidal(double amplitude) { return RampRate(Sinusoidal{amplitude}); }
    static RampRate tabulated(std::vector<double> times, std::vector<double> values) {
        return RampRate(Tabulated{std::move(times), std::move(values)});
    }

    const Schedule& schedule() const { return schedule_; }

    double value(double t) const;
    /// Exact integral of q over [t0, t1].
    double integral(double t0, double t1) const;
    /// Time average over one step, q^{n+1/2}.
    double average(double t0, double t1) const;
    /// sup over [0, horizon].
    double sup_norm(double horizon) const;
    bool is_zero() const;

private:
    Schedule schedule_;
};

/// Cell averages at one time level.
struct DensityField {
    std::vector<double> values;
    double time = 0.0;
};

/// Initial density; projected onto cell averages.
struct InitialDatum {
    struct Constant {
        double value = 0.0;
    };
    /// `left` for x <= position, `right` for x > position.
    struct Step {
        double position = 0.0;
        double left = 0.0;
        double right = 0.0;
    };
    /// height * cos^2(pi (x - center) / width) on |x - center| < width/2, zero elsewhere.
    struct Bump {
        double center = 0.0;
        double width = 1.0;
        double height = 1.0;
    };
    struct Function {
        std::function<double(double)> f;
    };
    std::variant<Constant, Step, Bump, Function> shape = Constant{};

    static InitialDatum constant(double v) { return {Constant{v}}; }
    static InitialDatum step(double x, double left, double right) { return {Step{x, left, right}}; }
    static InitialDatum bump(double c, double w, double h) { return {Bump{c, w, h}}; }
    static InitialDatum function(std::function<double(double)> f) { return {Function{std::move(f)}}; }
};

/// Cell averages of the datum: exact for constant and step data, midpoint rule otherwise.
/// Throws DataError when a value leaves [0, 1].
DensityField project_initial_datum(const InitialDatum& datum, const Grid& grid);

}  // namespace rampflow
