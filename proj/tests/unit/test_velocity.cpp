#include <gtest/gtest.h>

#include "rampflow/boundary.hpp"
#include "rampflow/errors.hpp"
#include "rampflow/velocity.hpp"

using namespace rampflow;

TEST(Velocity, AffineLaw) {
    const VelocityLaw v = VelocityLaw::affine();
    EXPECT_DOUBLE_EQ(v.value(0.3), 0.7);
    EXPECT_DOUBLE_EQ(v.derivative(0.3), -1.0);
    EXPECT_DOUBLE_EQ(v.second_derivative(0.3), 0.0);
    EXPECT_DOUBLE_EQ(v.flux(0.3), 0.21);
    EXPECT_DOUBLE_EQ(v.sup_value(), 1.0);
    EXPECT_DOUBLE_EQ(v.sup_derivative(), 1.0);
    EXPECT_DOUBLE_EQ(v.critical_density(), 0.5);
    EXPECT_DOUBLE_EQ(v.max_flux_slope(), 1.0);
    EXPECT_THROW(VelocityLaw::affine(0.0), ConfigError);
    EXPECT_THROW(VelocityLaw::affine(1.5), ConfigError);
}

TEST(Velocity, TabulatedReproducesAffineNodes) {
    const VelocityLaw v = VelocityLaw::tabulated({0.0, 0.5, 1.0}, {1.0, 0.5, 0.0});
    for (double r = 0.0; r <= 1.0; r += 0.05) EXPECT_NEAR(v.value(r), 1.0 - r, 1e-12) << r;
    EXPECT_NEAR(v.critical_density(), 0.5, 1e-3);
    EXPECT_NEAR(v.max_flux_slope(), 1.0, 1e-3);
}

TEST(Velocity, TabulatedIsMonotone) {
    const VelocityLaw v = VelocityLaw::tabulated({0.0, 0.2, 0.3, 1.0}, {1.0, 0.95, 0.4, 0.0});
    double prev = v.value(0.0);
    for (int i = 1; i <= 1000; ++i) {
        const double cur = v.value(i / 1000.0);
        EXPECT_LE(cur, prev + 1e-15);
        prev = cur;
    }
    EXPECT_GE(v.sup_derivative(), 0.55 / 0.1 - 1e-9);
}

TEST(Velocity, TabulatedValidation) {
    EXPECT_THROW(VelocityLaw::tabulated({0.0, 0.5}, {1.0, 0.5}), ConfigError);
    EXPECT_THROW(VelocityLaw::tabulated({0.0, 1.0}, {0.5, 0.8}), ConfigError);
    EXPECT_THROW(VelocityLaw::tabulated({0.0, 1.0}, {1.5, 0.0}), ConfigError);
}

TEST(Boundary, GhostFill) {
    PaddedField f(3, 2, 2);
    const double v[] = {0.1, 0.2, 0.3};
    f.assign_interior(v);
    f.fill_ghosts(BoundaryConditions::outflow());
    EXPECT_EQ(f[-2], 0.1);
    EXPECT_EQ(f[-1], 0.1);
    EXPECT_EQ(f[3], 0.3);
    EXPECT_EQ(f[4], 0.3);
    f.fill_ghosts(BoundaryConditions::make_periodic());
    EXPECT_EQ(f[-1], 0.3);
    EXPECT_EQ(f[-2], 0.2);
    EXPECT_EQ(f[3], 0.1);
    EXPECT_EQ(f[4], 0.2);
    f.fill_ghosts(BoundaryConditions::inflow(0.4));
    EXPECT_EQ(f[-1], 0.4);
    EXPECT_EQ(f[-2], 0.4);
    EXPECT_EQ(f[4], 0.3);
}

TEST(Boundary, DirichletValueMustBeADensity) {
    EXPECT_THROW(BoundaryConditions::inflow(1.2).validate(), ConfigError);
    EXPECT_NO_THROW(BoundaryConditions::inflow(0.4).validate());
}
