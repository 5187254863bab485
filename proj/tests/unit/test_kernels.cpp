#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "rampflow/errors.hpp"
#include "rampflow/kernels.hpp"

using namespace rampflow;

namespace {

double reactive_density(double x, double eta, double delta) {
    const double u = eta * eta - (x - delta) * (x - delta);
    if (u <= 0.0) return 0.0;
    return 16.0 / (5.0 * std::numbers::pi * std::pow(eta, 6)) * std::pow(u, 2.5);
}

double trapezoid(double a, double b, int panels, double eta, double delta) {
    const double h = (b - a) / panels;
    double s = 0.5 * (reactive_density(a, eta, delta) + reactive_density(b, eta, delta));
    for (int i = 1; i < panels; ++i) s += reactive_density(a + i * h, eta, delta);
    return s * h;
}

}  // namespace

TEST(ConvectiveKernel, PointValues) {
    const KernelParams k{0.05, 0.0};
    EXPECT_DOUBLE_EQ(eval_convective_kernel(0.0, k), 40.0);
    EXPECT_DOUBLE_EQ(eval_convective_kernel(0.05, k), 0.0);
    EXPECT_DOUBLE_EQ(eval_convective_kernel(0.025, k), 20.0);
    EXPECT_THROW(eval_convective_kernel(-1e-3, k), DomainError);
    EXPECT_THROW(eval_convective_kernel(0.051, k), DomainError);
    EXPECT_DOUBLE_EQ(convective_kernel_slope(k), 800.0);
}

TEST(ConvectiveKernel, WeightsMatchClosedForm) {
    const double eta = 0.05, dx = 1e-3;
    const auto g = discretize_convective_weights({eta, 0.0}, dx);
    ASSERT_EQ(g.size(), 50u);
    EXPECT_NEAR(g[0], 0.0396, 1e-15);
    for (std::size_t p = 0; p < g.size(); ++p) {
        const double oracle = (2.0 / (eta * eta)) * (eta * dx - dx * dx * (2.0 * p + 1.0) / 2.0);
        EXPECT_NEAR(g[p], oracle, 1e-14) << "p=" << p;
    }
    EXPECT_NEAR(std::accumulate(g.begin(), g.end(), 0.0), 1.0, 1e-12);
    for (std::size_t p = 1; p < g.size(); ++p) EXPECT_LT(g[p], g[p - 1]);
}

TEST(ConvectiveKernel, SingleCellStencil) {
    const auto g = discretize_convective_weights({1e-3, 0.0}, 1e-3);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_DOUBLE_EQ(g[0], 1.0);
}

TEST(ConvectiveKernel, RejectsMisalignedRadius) {
    EXPECT_THROW(discretize_convective_weights({0.0505, 0.0}, 1e-3), ConfigError);
    EXPECT_THROW(discretize_convective_weights({0.0, 0.0}, 1e-3), ConfigError);
}

TEST(ReactiveKernel, PointValuesAndSupport) {
    const KernelParams k{0.05, -0.01};
    EXPECT_NEAR(eval_reactive_kernel(-0.01, k), 16.0 / (5.0 * std::numbers::pi * 0.05), 1e-12);
    EXPECT_NEAR(eval_reactive_kernel(-0.06, k), 0.0, 1e-30);
    EXPECT_NEAR(eval_reactive_kernel(0.04, k), 0.0, 1e-30);
    EXPECT_THROW(eval_reactive_kernel(0.041, k), DomainError);
    EXPECT_THROW(eval_reactive_kernel(-0.0601, k), DomainError);
}

TEST(ReactiveKernel, IntegratesToOne) {
    const KernelParams k{0.05, -0.01};
    const int panels = 200000;
    const double a = k.delta - k.eta, b = k.delta + k.eta, h = (b - a) / panels;
    double s = 0.0;
    for (int i = 0; i <= panels; ++i) {
        const double w = (i == 0 || i == panels) ? 0.5 : 1.0;
        s += w * eval_reactive_kernel(std::clamp(a + i * h, a, b), k);
    }
    EXPECT_NEAR(s * h, 1.0, 1e-10);
}

TEST(ReactiveKernel, OffsetsCoverSupport) {
    const auto w = discretize_reactive_weights({0.05, -0.01}, 1e-3);
    EXPECT_EQ(w.first_offset, -60);
    EXPECT_EQ(w.last_offset(), 39);
    EXPECT_EQ(w.weights.size(), 100u);
}

TEST(ReactiveKernel, PeakSitsAtTheShift) {
    // delta = -0.01 is the interface between cells h = -11 and h = -10, so the two
    // neighbouring cells tie for the maximum.
    const auto w = discretize_reactive_weights({0.05, -0.01}, 1e-3);
    const auto peak = std::max_element(w.weights.begin(), w.weights.end()) - w.weights.begin();
    const int h_peak = w.first_offset + static_cast<int>(peak);
    EXPECT_TRUE(h_peak == -11 || h_peak == -10) << h_peak;
    const double left = w.weights[static_cast<std::size_t>(-11 - w.first_offset)];
    const double right = w.weights[static_cast<std::size_t>(-10 - w.first_offset)];
    EXPECT_NEAR(left, right, 1e-15);
    const double oracle = trapezoid(-0.011, -0.010, 10000, 0.05, -0.01);
    EXPECT_NEAR(left, oracle, 1e-8);
}

TEST(ReactiveKernel, MatchesTrapezoidOracleOnRandomTriples) {
    std::mt19937 rng(20240611);
    const double spacings[] = {1e-3, 2e-3, 2.5e-3, 5e-3, 1e-2};
    std::uniform_int_distribution<int> pick(0, 4);
    std::uniform_int_distribution<int> radius(1, 60);
    for (int trial = 0; trial < 10; ++trial) {
        const double dx = spacings[pick(rng)];
        const int n = radius(rng);
        const int m = std::uniform_int_distribution<int>(-n, n)(rng);
        const KernelParams k{n * dx, m * dx};
        const auto w = discretize_reactive_weights(k, dx);
        ASSERT_EQ(static_cast<int>(w.weights.size()), 2 * n) << "trial " << trial;
        EXPECT_EQ(w.first_offset, m - n);
        std::vector<double> oracle;
        for (int h = w.first_offset; h <= w.last_offset(); ++h) {
            oracle.push_back(trapezoid(h * dx, (h + 1) * dx, 10000, k.eta, k.delta));
        }
        const double total = std::accumulate(oracle.begin(), oracle.end(), 0.0);
        EXPECT_NEAR(std::accumulate(w.weights.begin(), w.weights.end(), 0.0), 1.0, 1e-12);
        for (std::size_t i = 0; i < oracle.size(); ++i) {
            EXPECT_NEAR(w.weights[i], oracle[i] / total, 1e-8)
                << "trial " << trial << " dx=" << dx << " n=" << n << " m=" << m << " i=" << i;
        }
    }
}

TEST(ReactiveKernel, RejectsMisalignedShift) {
    EXPECT_THROW(discretize_reactive_weights({0.05, -0.0105}, 1e-3), ConfigError);
    EXPECT_THROW(KernelParams({0.05, 0.06}).validate(), ConfigError);
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
    for (int n = 1; n <= 10; ++n) {
        const auto q = gauss_legendre(n);
        ASSERT_EQ(q.nodes.size(), static_cast<std::size_t>(n));
        for (int d = 0; d <= 2 * n - 1; ++d) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += q.weights[i] * std::pow(q.nodes[i], d);
            const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
            EXPECT_NEAR(s, exact, 1e-14) << "n=" << n << " d=" << d;
        }
    }
    EXPECT_THROW(gauss_legendre(0), ConfigError);
}

TEST(KernelWeights, BundlesBothStencils) {
    const auto kw = make_kernel_weights({0.1, -0.02}, 1e-3);
    EXPECT_EQ(kw.convective.size(), 100u);
    EXPECT_EQ(kw.reactive.first_offset, -120);
    EXPECT_EQ(kw.reactive.last_offset(), 79);
}
