#pragma once

#include <span>
#include <vector>

namespace rampflow {

struct BoundarySide {
    enum class Kind { Outflow, Dirichlet };
    Kind kind = Kind::Outflow;
    double value = 0.0;  // used by Dirichlet

    static BoundarySide outflow() { return {}; }
    static BoundarySide dirichlet(double v) { return {Kind::Dirichlet, v}; }
};

/// Ghost-cell policy. Outflow copies the boundary cell (absorbing), Dirichlet holds a
/// fixed state, periodic wraps both sides.
struct BoundaryConditions {
    bool periodic = false;
    BoundarySide left;
    BoundarySide right;

    static BoundaryConditions outflow() { return {}; }
    static BoundaryConditions make_periodic() { return {true, {}, {}}; }
    static BoundaryConditions inflow(double left_value) {
        return {false, BoundarySide::dirichlet(left_value), BoundarySide::outflow()};
    }

    void validate() const;
};

/// Cell values with ghost layers: valid indices are [-pad_left, n + pad_right).
class PaddedField {
public:
    PaddedField() = default;
    PaddedField(int n, int pad_left, int pad_right);

    int size() const { return n_; }
    int pad_left() const { return pad_left_; }
    int pad_right() const { return pad_right_; }

    double operator[](int j) const { return data_[static_cast<std::size_t>(j + pad_left_)]; }
    double& operator[](int j) { return data_[static_cast<std::size_t>(j + pad_left_)]; }

    std::span<double> interior() { return {data_.data() + pad_left_, static_cast<std::size_t>(n_)}; }
    std::span<const double> interior() const {
        return {data_.data() + pad_left_, static_cast<std::size_t>(n_)};
    }
    /// Pointer to cell j, valid for the padded range.
    const double* at(int j) const { return data_.data() + (j + pad_left_); }

    void assign_interior(std::span<const double> values);
    void fill_ghosts(const BoundaryConditions& bc);

private:
    int n_ = 0;
    int pad_left_ = 0;
    int pad_right_ = 0;
    std::vector<double> data_;
};

}  // namespace rampflow
