#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "rutherford/classical.hpp"

using namespace rutherford;

namespace {

constexpr double kP0 = 386.13;
constexpr double kMass = 3727.379;
constexpr double kGoldAlpha = 227.514377556497;
// Launch energy p0^2/2m + k/500 and its turning distance, 30-digit arithmetic.
constexpr double kLaunchEnergy = 20.4551919931416;
constexpr double kTurningDistance = 11.1225735565220;

} // namespace

TEST(HamiltonStep, FreeDrift) {
    const auto s = hamilton_step(ClassicalState{0.0, kP0, 0.0}, [](double) { return 0.0; }, kMass, 1.0);
    EXPECT_NEAR(s.x, 0.103593, 1e-6);
    EXPECT_EQ(s.p, kP0);
    EXPECT_EQ(s.t, 1.0);
}

TEST(HamiltonStep, RetreatsFromTurningPoint) {
    const CoulombForce f{kGoldAlpha, 1.0};
    const ClassicalState turning{-kTurningDistance, 0.0, 0.0};
    const auto s = hamilton_step(turning, f, kMass, 0.5);
    EXPECT_LT(s.p, 0.0);
    EXPECT_LT(s.x, turning.x);
}

TEST(HamiltonStep, ReversibleToTruncationOrder) {
    const CoulombForce f{kGoldAlpha, 1.0};
    const ClassicalState start{-100.0, 300.0, 0.0};
    const auto there = hamilton_step(start, f, kMass, 0.5);
    const auto back = hamilton_step(there, f, kMass, -0.5);
    EXPECT_NEAR(back.x, start.x, 1e-10 * std::abs(start.x));
    EXPECT_NEAR(back.p, start.p, 1e-10 * std::abs(start.p));
    EXPECT_NEAR(back.t, 0.0, 1e-15);
}

TEST(HamiltonStep, Errors) {
    const CoulombForce f{kGoldAlpha, 5.0};
    EXPECT_THROW(hamilton_step(ClassicalState{-1.0, 0.0, 0.0}, f, kMass, 0.5), InvalidArgument);
    EXPECT_THROW(hamilton_step(ClassicalState{-100.0, 0.0, 0.0}, f, kMass, 0.0), InvalidArgument);
    EXPECT_THROW(hamilton_step(ClassicalState{-100.0, 0.0, 0.0}, f, -1.0, 0.5), InvalidArgument);
}

TEST(ClassicalTrajectory, HeadlineConservesEnergyAndTurnsAtOracle) {
    const auto tr = classical_trajectory(-500.0, kP0, kMass, kGoldAlpha, 0.5, 12000.0);
    ASSERT_EQ(tr.size(), 24001u);
    double drift = 0.0, closest = 1e300;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const double e = tr.p[i] * tr.p[i] / (2.0 * kMass) + kGoldAlpha / std::abs(tr.x[i]);
        drift = std::max(drift, std::abs(e - kLaunchEnergy) / kLaunchEnergy);
        closest = std::min(closest, std::abs(tr.x[i]));
    }
    EXPECT_LT(drift, 1e-8);
    EXPECT_NEAR(closest, kTurningDistance, 1e-3 * kTurningDistance);
}

TEST(ClassicalTrajectory, OutgoingSpeedMatchesIncoming) {
    const auto tr = classical_trajectory(-500.0, kP0, kMass, kGoldAlpha, 0.5, 12000.0);
    // Find the outbound crossing of x = -500 and interpolate p there.
    for (std::size_t i = 1; i < tr.size(); ++i) {
        if (tr.p[i] < 0.0 && tr.x[i - 1] > -500.0 && tr.x[i] <= -500.0) {
            const double w = (tr.x[i - 1] + 500.0) / (tr.x[i - 1] - tr.x[i]);
            const double p_out = tr.p[i - 1] + w * (tr.p[i] - tr.p[i - 1]);
            EXPECT_NEAR(-p_out, kP0, 1e-6 * kP0);
            return;
        }
    }
    FAIL() << "trajectory never returned to -500 fm";
}

TEST(ClassicalTrajectory, FreeMotionIsUniform) {
    const auto tr = classical_trajectory(-500.0, kP0, kMass, 0.0, 0.5, 4000.0, 10);
    for (std::size_t i = 0; i < tr.size(); ++i) {
        EXPECT_NEAR(tr.x[i], -500.0 + kP0 / kMass * tr.times[i], 1e-10 * 500.0);
        EXPECT_EQ(tr.force[i], 0.0);
    }
    EXPECT_EQ(tr.size(), 4000u / 5 + 1);
}

TEST(ClassicalTrajectory, Preconditions) {
    EXPECT_THROW(classical_trajectory(500.0, kP0, kMass, kGoldAlpha, 0.5, 10.0), InvalidArgument);
    EXPECT_THROW(classical_trajectory(-500.0, -1.0, kMass, kGoldAlpha, 0.5, 10.0), InvalidArgument);
    EXPECT_THROW(classical_trajectory(-500.0, kP0, kMass, kGoldAlpha, 0.0, 10.0), InvalidArgument);
    EXPECT_THROW(classical_trajectory(-500.0, kP0, kMass, kGoldAlpha, 0.5, 10.0, 0), InvalidArgument);
}

TEST(AnalyticClosestApproach, Values) {
    EXPECT_NEAR(analytic_closest_approach(20.0, 227.514), 11.3757, 1e-4);
    EXPECT_DOUBLE_EQ(analytic_closest_approach(227.514, 227.514), 1.0);
    EXPECT_DOUBLE_EQ(analytic_closest_approach(40.0, 227.514), 0.5 * analytic_closest_approach(20.0, 227.514));
    EXPECT_NEAR(analytic_closest_approach(kLaunchEnergy, kGoldAlpha), kTurningDistance, 1e-12);
    EXPECT_THROW(analytic_closest_approach(0.0, 1.0), InvalidArgument);
    EXPECT_THROW(analytic_closest_approach(1.0, -1.0), InvalidArgument);
}
