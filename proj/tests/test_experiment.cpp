#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "rutherford/experiment.hpp"

using namespace rutherford;

namespace {

constexpr double kP0 = 386.13;
constexpr double kMass = 3727.379;

/// Small Coulomb setup: same physics as the headline run with a shorter
/// flight and a coarser mesh.
RunConfig reduced_coulomb() {
    RunConfig c;
    c.x0 = -200.0;
    c.sigma_list = {8.0, 16.0};
    c.x_min = -600.0;
    c.x_max = 50.0;
    c.n_points = 13001;  // dx = 0.05
    c.dt = 0.25;
    c.t_max = 3200.0;
    c.sample_every = 8;
    return c;
}

RunConfig reduced_free() {
    RunConfig c;
    c.sigma_list = {20.0};
    c.coupling_k = 0.0;
    c.x_min = -700.0;
    c.x_max = -100.0;
    c.n_points = 24001;  // dx = 0.025
    c.dt = 0.125;
    c.t_max = 2000.0;
    c.sample_every = 80;
    return c;
}

} // namespace

TEST(ClosestApproach, RecoversVertexOfSampledParabola) {
    std::vector<double> t, x, p;
    for (double s = 3.0; s <= 200.0; s += 7.0) {
        t.push_back(s);
        x.push_back(-11.0 + (s - 100.0) * (s - 100.0));
        p.push_back(2.0 * (s - 100.0));
    }
    const auto tp = closest_approach(t, x, p);
    ASSERT_TRUE(tp.reached);
    EXPECT_NEAR(tp.time, 100.0, 1e-6);
    EXPECT_NEAR(tp.distance, 11.0, 1e-6);
}

TEST(ClosestApproach, MaximumOfInboundTrajectory) {
    std::vector<double> t, x, p;
    for (double s = 0.0; s <= 50.0; s += 1.3) {
        t.push_back(s);
        x.push_back(-20.0 - 0.5 * (s - 31.7) * (s - 31.7));
        p.push_back(-(s - 31.7));
    }
    const auto tp = closest_approach(t, x, p);
    ASSERT_TRUE(tp.reached);
    EXPECT_NEAR(tp.time, 31.7, 1e-9);
    EXPECT_NEAR(tp.distance, 20.0, 1e-9);
}

TEST(ClosestApproach, NotReachedWithoutSignChange) {
    const std::vector<double> t{0, 1, 2}, x{-3, -2, -1}, p{1, 1, 1};
    EXPECT_FALSE(closest_approach(t, x, p).reached);
    EXPECT_THROW(closest_approach(t, x, std::vector<double>{1, 1}), InvalidArgument);
}

TEST(ForceCrossover, InterpolatesFirstDrop) {
    const std::vector<double> t{0, 1, 2, 3, 4};
    const std::vector<double> q{-2, -3, -4, -4, -1};
    const std::vector<double> c{-1, -2, -3, -5, -6};
    const auto tc = force_crossover(t, q, c);
    ASSERT_TRUE(tc.has_value());
    // gap goes +1 at t=2 to -1 at t=3
    EXPECT_NEAR(*tc, 2.5, 1e-12);
    EXPECT_FALSE(force_crossover(t, std::vector<double>(5, 0.0), std::vector<double>(5, 0.0)).has_value());
    // Never above first: no crossover reported.
    EXPECT_FALSE(force_crossover(t, std::vector<double>(5, -1.0), std::vector<double>(5, -2.0)).has_value());
}

TEST(MaxLag, ApproachPhaseOnly) {
    const std::vector<double> t{0, 1, 2, 3};
    const std::vector<double> cl{-10, -8, -6, -8};
    const std::vector<double> q{-10, -8.5, -7, -5};
    EXPECT_DOUBLE_EQ(max_lag(t, cl, q, 2.0), 1.0);
    EXPECT_TRUE(lag_holds(t, cl, q, 2.0));
    EXPECT_FALSE(lag_holds(t, cl, q, 3.0));
}

TEST(Jensen, InitialGaussianQuadrature) {
    // <1/x^2> >= 1/<x>^2 for Gaussians left of the nucleus, by direct
    // Simpson quadrature of the analytic density.
    for (double sigma : {1.0, 5.0, 20.0, 50.0, 80.0}) {
        const double x0 = -500.0;
        const int n = 200000;
        const double a = x0 - 6.0 * sigma, b = x0 + 6.0 * sigma, h = (b - a) / n;
        double sum = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double x = a + i * h;
            const double rho = std::exp(-0.5 * std::pow((x - x0) / sigma, 2)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            sum += w * rho / (x * x);
        }
        EXPECT_GT(sum * h / 3.0, 1.0 / (x0 * x0)) << "sigma " << sigma;
    }
}

TEST(Jensen, WiderPacketFeelsLargerInitialForce) {
    // k<1/x^2> for the two headline packets (30-digit quadrature).
    const double f20 = 9.14461129618434e-4, f50 = 9.38829569208351e-4;
    const RunConfig c;
    const Grid g = make_grid(-1500.0, 100.0, 16001);
    const auto pot = coulomb_table(g, coupling_constant(2, 79));
    const double q20 = mean_force(gaussian_packet(g, c.x0, 20.0, c.p0), pot);
    const double q50 = mean_force(gaussian_packet(g, c.x0, 50.0, c.p0), pot);
    EXPECT_NEAR(-q20, f20, 1e-6 * f20);
    EXPECT_NEAR(-q50, f50, 1e-6 * f50);
    EXPECT_GT(std::abs(q50), std::abs(q20));
}

TEST(RunComparison, FreeRunTracksClassicalMotion) {
    const RunConfig c = reduced_free();
    const auto r = run_comparison(c);
    const auto& s = r.series;
    ASSERT_EQ(s.times.size(), c.sample_count());
    const auto& q = s.quantum.front();
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        EXPECT_NEAR(q.mean_x[i], s.classical.x[i], 1e-3 * std::abs(s.classical.x[i]));
        EXPECT_NEAR(s.classical.x[i], c.x0 + kP0 / kMass * s.times[i], 1e-9);
    }
    const auto& m = r.metrics.per_sigma.front();
    EXPECT_LT(m.max_lag, 1e-3 * std::abs(c.x0));
    EXPECT_FALSE(m.turning.reached);
    EXPECT_FALSE(r.metrics.classical_turning.reached);
    EXPECT_FALSE(m.force_crossover_time.has_value());
    EXPECT_TRUE(m.jensen_t0_satisfied);  // 0 >= 0
    EXPECT_FALSE(r.metrics.closest_approach_oracle.has_value());

    const auto jr = jensen_report(s);
    ASSERT_EQ(jr.size(), 1u);
    EXPECT_EQ(jr[0].force_t0_quantum, 0.0);
    EXPECT_EQ(jr[0].force_t0_classical, 0.0);
}

TEST(RunComparison, ReducedCoulombOrderings) {
    const RunConfig c = reduced_coulomb();
    const auto r = run_comparison(c);
    const auto& m = r.metrics;
    ASSERT_TRUE(m.classical_turning.reached);
    ASSERT_TRUE(m.closest_approach_oracle.has_value());
    EXPECT_NEAR(m.classical_turning.distance, *m.closest_approach_oracle, 1e-3 * *m.closest_approach_oracle);
    ASSERT_EQ(m.per_sigma.size(), 2u);
    for (const auto& s : m.per_sigma) {
        ASSERT_TRUE(s.turning.reached) << s.sigma;
        EXPECT_TRUE(s.jensen_t0_satisfied);
        EXPECT_TRUE(s.lag_holds);
        EXPECT_TRUE(s.exceeds_classical);
        EXPECT_TRUE(s.force_crossover_time.has_value());
        EXPECT_LT(s.max_norm_drift, 1e-8);
        EXPECT_LT(s.max_energy_drift, 1e-6);
    }
    EXPECT_GT(m.per_sigma[1].turning.distance, m.per_sigma[0].turning.distance);
    EXPECT_GT(m.per_sigma[1].max_lag, m.per_sigma[0].max_lag);
    EXPECT_LT(m.classical_energy_drift, 1e-8);
}

TEST(RunComparison, Deterministic) {
    RunConfig c = reduced_free();
    c.t_max = 300.0;
    const auto a = run_comparison(c);
    const auto b = run_comparison(c);
    ASSERT_EQ(a.series.quantum.size(), b.series.quantum.size());
    for (std::size_t k = 0; k < a.series.quantum.size(); ++k) {
        EXPECT_EQ(a.series.quantum[k].mean_x, b.series.quantum[k].mean_x);
        EXPECT_EQ(a.series.quantum[k].mean_p, b.series.quantum[k].mean_p);
        EXPECT_EQ(a.series.quantum[k].mean_energy, b.series.quantum[k].mean_energy);
    }
    EXPECT_EQ(a.series.classical.x, b.series.classical.x);
}

TEST(RunComparison, BoundaryContaminationIsAnError) {
    RunConfig c = reduced_coulomb();
    c.sigma_list = {10.0};
    c.x_min = -300.0;  // reflected packet returns to the left wall
    c.n_points = 3501;
    c.dt = 0.5;
    c.sample_every = 4;
    c.t_max = 6000.0;
    EXPECT_THROW(run_comparison(c), BoundaryContamination);
}

TEST(RunComparison, RejectsPacketsThatDoNotFit) {
    RunConfig c = reduced_coulomb();
    c.sigma_list = {8.0, 200.0};
    EXPECT_THROW(run_comparison(c), InvalidArgument);
}
