#include "rampflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rampflow/alignment.hpp"
#include "rampflow/errors.hpp"

namespace rampflow {

std::vector<double> Grid::cell_centers() const {
    std::vector<double> x(static_cast<std::size_t>(n_cells_));
    for (int j = 0; j < n_cells_; ++j) x[static_cast<std::size_t>(j)] = cell_center(j);
    return x;
}

std::optional<int> Grid::interface_index(double x) const {
    const auto k = aligned_multiple(x - x_left_, dx_);
    if (!k || *k < 0 || *k > n_cells_) return std::nullopt;
    return static_cast<int>(*k);
}

Grid build_grid(double x_left, double x_right, double dx) {
    if (!(x_left < x_right)) {
        std::ostringstream os;
        os << "domain requires x_left < x_right, got [" << x_left << ", " << x_right << "]";
        throw ConfigError(os.str());
    }
    if (!(dx > 0.0) || !std::isfinite(dx)) {
        std::ostringstream os;
        os << "dx must be positive, got " << dx;
        throw ConfigError(os.str());
    }
    const auto n = aligned_multiple(x_right - x_left, dx);
    if (!n || *n < 1) {
        std::ostringstream os;
        os << "domain width " << x_right - x_left << " is not an integer multiple of dx=" << dx;
        throw ConfigError(os.str());
    }
    Grid g;
    g.x_left_ = x_left;
    g.x_right_ = x_right;
    g.dx_ = dx;
    g.n_cells_ = static_cast<int>(*n);
    return g;
}

RampGeometry RampGeometry::none(const Grid& grid) {
    RampGeometry r;
    r.indicator_on.assign(static_cast<std::size_t>(grid.n_cells()), 0.0);
    r.indicator_off.assign(static_cast<std::size_t>(grid.n_cells()), 0.0);
    return r;
}

namespace {

int locate_ramp(const Grid& grid, Interval ramp, double length, long cells, const char* name) {
    const auto first = grid.interface_index(ramp.start);
    const auto last = grid.interface_index(ramp.end);
    if (!first || !last) {
        std::ostringstream os;
        os << name << " [" << ramp.start << ", " << ramp.end
           << "] must lie inside the domain with endpoints on cell interfaces";
        throw ConfigError(os.str());
    }
    if (*last - *first != cells) {
        std::ostringstream os;
        os << name << " [" << ramp.start << ", " << ramp.end << "] does not have length L=" << length;
        throw ConfigError(os.str());
    }
    return *first;
}

}  // namespace

RampGeometry build_ramps(const Grid& grid, Interval on, Interval off, double length) {
    if (!(length > 0.0)) {
        std::ostringstream os;
        os << "ramp length must be positive, got " << length;
        throw ConfigError(os.str());
    }
    const auto cells = aligned_multiple(length, grid.dx());
    if (!cells || *cells < 1) {
        std::ostringstream os;
        os << "ramp length L=" << length << " is not a positive multiple of dx=" << grid.dx();
        throw ConfigError(os.str());
    }
    RampGeometry r = RampGeometry::none(grid);
    r.on = on;
    r.off = off;
    r.length = length;
    r.cells = static_cast<int>(*cells);
    r.on_first = locate_ramp(grid, on, length, *cells, "on-ramp");
    r.off_first = locate_ramp(grid, off, length, *cells, "off-ramp");
    if (r.on_first <= r.off_last() && r.off_first <= r.on_last()) {
        throw ConfigError("on-ramp and off-ramp cell ranges overlap");
    }
    const double inv = 1.0 / length;
    for (int j = r.on_first; j <= r.on_last(); ++j) r.indicator_on[static_cast<std::size_t>(j)] = inv;
    for (int j = r.off_first; j <= r.off_last(); ++j) r.indicator_off[static_cast<std::size_t>(j)] = inv;
    return r;
}

RampRate::RampRate(Schedule schedule) : schedule_(std::move(schedule)) {
    if (const auto* c = std::get_if<Constant>(&schedule_)) {
        if (!(c->value >= 0.0) || !std::isfinite(c->value)) {
            throw ConfigError("constant ramp rate must be nonnegative");
        }
    } else if (const auto* s = std::get_if<Sinusoidal>(&schedule_)) {
        if (!(s->amplitude >= 0.0) || !std::isfinite(s->amplitude)) {
            throw ConfigError("sinusoidal ramp amplitude must be nonnegative");
        }
    } else {
        const auto& t = std::get<Tabulated>(schedule_);
        if (t.times.empty() || t.times.size() != t.values.size()) {
            throw ConfigError("tabulated ramp rate needs equally sized, nonempty times and values");
        }
        for (std::size_t i = 1; i < t.times.size(); ++i) {
            if (!(t.times[i] > t.times[i - 1])) {
                throw ConfigError("tabulated ramp rate times must be strictly increasing");
            }
        }
        for (double v : t.values) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw ConfigError("tabulated ramp rate values must be nonnegative");
            }
        }
    }
}

namespace {

double tabulated_value(const RampRate::Tabulated& tab, double t) {
    const auto& ts = tab.times;
    if (t <= ts.front()) return tab.values.front();
    if (t >= ts.back()) return tab.values.back();
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    const auto i = static_cast<std::size_t>(it - ts.begin());
    const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
    return (1.0 - w) * tab.values[i - 1] + w * tab.values[i];
}

// Integral of the piecewise-linear interpolant from times.front() to t (negative before).
double tabulated_antiderivative(const RampRate::Tabulated& tab, double t) {
    const auto& ts = tab.times;
    const auto& vs = tab.values;
    if (t <= ts.front()) return (t - ts.front()) * vs.front();
    double acc = 0.0;
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (t <= ts[i]) {
            return acc + 0.5 * (t - ts[i - 1]) * (vs[i - 1] + tabulated_value(tab, t));
        }
        acc += 0.5 * (ts[i] - ts[i - 1]) * (vs[i - 1] + vs[i]);
    }
    return acc + (t - ts.back()) * vs.back();
}

}  // namespace

double RampRate::value(double t) const {
    return std::visit(
        [t](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Constant>) {
                return s.value;
            } else if constexpr (std::is_same_v<S, Sinusoidal>) {
                return 0.5 * s.amplitude * (std::sin(std::numbers::pi * t) + 1.0);
            } else {
                return tabulated_value(s, t);
            }
        },
        schedule_);
}

double RampRate::integral(double t0, double t1) const {
    return std::visit(
        [t0, t1](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Constant>) {
                return s.value * (t1 - t0);
            } else if constexpr (std::is_same_v<S, Sinusoidal>) {
                constexpr double pi = std::numbers::pi;
                return 0.5 * s.amplitude * ((t1 - t0) + (std::cos(pi * t0) - std::cos(pi * t1)) / pi);
            } else {
                return tabulated_antiderivative(s, t1) - tabulated_antiderivative(s, t0);
            }
        },
        schedule_);
}

double RampRate::average(double t0, double t1) const {
    if (t1 == t0) return value(t0);
    return integral(t0, t1) / (t1 - t0);
}

double RampRate::sup_norm(double horizon) const {
    return std::visit(
        [horizon](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Constant>) {
                return s.value;
            } else if constexpr (std::is_same_v<S, Sinusoidal>) {
                // (sin(pi t) + 1)/2 increases on [0, 1/2] and peaks at 1.
                const double t = std::min(horizon, 0.5);
                return 0.5 * s.amplitude * (std::sin(std::numbers::pi * t) + 1.0);
            } else {
                double m = std::max(tabulated_value(s, 0.0), tabulated_value(s, horizon));
                for (std::size_t i = 0; i < s.times.size(); ++i) {
                    if (s.times[i] >= 0.0 && s.times[i] <= horizon) m = std::max(m, s.values[i]);
                }
                return m;
            }
        },
        schedule_);
}

bool RampRate::is_zero() const {
    if (const auto* c = std::get_if<Constant>(&schedule_)) return c->value == 0.0;
    if (const auto* s = std::get_if<Sinusoidal>(&schedule_)) return s->amplitude == 0.0;
    const auto& t = std::get<Tabulated>(schedule_);
    return std::all_of(t.values.begin(), t.values.end(), [](double v) { return v == 0.0; });
}

DensityField project_initial_datum(const InitialDatum& datum, const Grid& grid) {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (const auto* s = std::get_if<InitialDatum::Step>(&datum.shape)) {
        if (!in_unit(s->left) || !in_unit(s->right)) {
            throw DataError("step initial datum values must lie in [0, 1]");
        }
    } else if (const auto* b = std::get_if<InitialDatum::Bump>(&datum.shape)) {
        if (!in_unit(b->height) || !(b->width > 0.0)) {
            throw DataError("bump initial datum needs height in [0, 1] and positive width");
        }
    }
    DensityField field;
    field.values.resize(static_cast<std::size_t>(grid.n_cells()));
    const double dx = grid.dx();
    for (int j = 0; j < grid.n_cells(); ++j) {
        const double a = grid.interface(j);
        const double b = grid.interface(j + 1);
        const double value = std::visit(
            [&](const auto& s) -> double {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, InitialDatum::Constant>) {
                    return s.value;
                } else if constexpr (std::is_same_v<S, InitialDatum::Step>) {
                    if (b <= s.position) return s.left;
                    if (a >= s.position) return s.right;
                    return ((s.position - a) * s.left + (b - s.position) * s.right) / dx;
                } else if constexpr (std::is_same_v<S, InitialDatum::Bump>) {
                    const double u = (grid.cell_center(j) - s.center) / s.width;
                    if (std::abs(u) >= 0.5) return 0.0;
                    const double c = std::cos(std::numbers::pi * u);
                    return s.height * c * c;
                } else {
                    return s.f(grid.cell_center(j));
                }
            },
            datum.shape);
        if (!(value >= 0.0 && value <= 1.0)) {
            std::ostringstream os;
            os << "initial density " << value << " in cell " << j << " lies outside [0, 1]";
            throw DataError(os.str());
        }
        field.values[static_cast<std::size_t>(j)] = value;
    }
    return field;
}

}  // namespace rampflow
