#pragma once

#include <cmath>
#include <optional>

namespace rampflow {

/// Relative tolerance for "value is an integer multiple of dx".
inline constexpr double kAlignmentTolerance = 1e-9;

/// Returns k when value == k*dx within kAlignmentTolerance (relative), else nullopt.
inline std::optional<long> aligned_multiple(double value, double dx) {
    const double ratio = value / dx;
    const double k = std::round(ratio);
    if (std::abs(ratio - k) > kAlignmentTolerance * std::max(1.0, std::abs(ratio))) {
        return std::nullopt;
    }
    return static_cast<long>(k);
}

}  // namespace rampflow
