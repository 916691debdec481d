#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sqint/resolution.hpp"

namespace sqint {
namespace {

constexpr double pi = std::numbers::pi;

double scaled(const ResolutionResult& r) { return r.delta_phi * std::sqrt(r.mean_N * r.mean_N + 2 * r.mean_N); }

TEST(StandardResolution, IdealDarkPointValue) {
    for (double g : {0.3, 1.0, 2.5, 5.0}) {
        const ResolutionResult r = standard_resolution(InterferometerConfig::ideal(g));
        ASSERT_TRUE(r.converged);
        EXPECT_NEAR(r.delta_phi * std::sinh(2 * g), 1.0, 1e-7);
        EXPECT_DOUBLE_EQ(r.kappa, r.delta_phi * r.mean_N);
    }
}

TEST(ModifiedResolution, SmallAngleLimitApproachesFour) {
    // brute force: positive root of 2d = 1 + sqrt(1 + 3 d^2)
    double lo = 1.0, hi = 10.0;
    for (int k = 0; k < 200; ++k) {
        const double mid = (lo + hi) / 2;
        (2 * mid - 1 - std::sqrt(1 + 3 * mid * mid) < 0 ? lo : hi) = mid;
    }
    EXPECT_NEAR(lo, 4.0, 1e-12);

    const ResolutionResult r = modified_resolution(InterferometerConfig::ideal(4.0));
    ASSERT_TRUE(r.converged);
    EXPECT_NEAR(scaled(r), lo, 1e-3);
}

TEST(ModifiedResolution, ModerateGainValue) {
    const ResolutionResult r = modified_resolution(InterferometerConfig::ideal(2.5));
    ASSERT_TRUE(r.converged);
    EXPECT_NEAR(scaled(r), 3.966, 2e-3);
    EXPECT_LE(r.residual, 1e-12);
    EXPECT_EQ(r.solver, "fixed_point");
}

TEST(ModifiedResolution, SolvesItsDefiningEquation) {
    InterferometerConfig c = InterferometerConfig::with_symmetric_losses(2.0, 0.02, 0.03);
    c.delta1 = 0.01;
    c.delta2 = -0.2;
    const ResolutionResult r = modified_resolution(c);
    ASSERT_TRUE(r.converged);
    const double slope = std::abs(signal_slope(c, r.working_point));
    const double rhs = (evaluate(c, r.working_point).sigma + evaluate(c, r.working_point + r.delta_phi).sigma) / (2 * slope);
    EXPECT_NEAR(r.delta_phi, rhs, 1e-12);
}

TEST(ModifiedResolution, SolversAgree) {
    for (double g : {0.5, 1.5, 3.0}) {
        const InterferometerConfig c = InterferometerConfig::with_symmetric_losses(g, 0.0, 0.05);
        ResolutionOptions fp, bi;
        fp.solver = ModifiedSolver::fixed_point;
        bi.solver = ModifiedSolver::bisection;
        const ResolutionResult a = modified_resolution(c, default_working_point, fp);
        const ResolutionResult b = modified_resolution(c, default_working_point, bi);
        ASSERT_TRUE(a.converged && b.converged);
        EXPECT_EQ(b.solver, "bisection");
        EXPECT_NEAR(a.delta_phi, b.delta_phi, 1e-11 * std::max(1.0, a.delta_phi));
    }
}

TEST(ModifiedResolution, NeverBelowStandard) {
    for (double g : {1.0, 2.0, 4.0}) {
        const InterferometerConfig c = InterferometerConfig::with_symmetric_losses(g, 0.01, 0.01);
        const ResolutionResult s = standard_resolution(c), m = modified_resolution(c);
        ASSERT_TRUE(s.converged && m.converged);
        EXPECT_GE(m.delta_phi, s.delta_phi * (1 - 1e-9));
    }
}

TEST(ModifiedResolution, ZeroSlopeReportsNonConvergence) {
    const ResolutionResult r = modified_resolution(InterferometerConfig::ideal(0.0));
    EXPECT_FALSE(r.converged);
    EXPECT_FALSE(r.diagnostic.empty());
    EXPECT_TRUE(std::isinf(r.delta_phi));

    InterferometerConfig dead = InterferometerConfig::ideal(1.0);
    dead.alpha2 = dead.beta2 = pi / 2;
    EXPECT_FALSE(standard_resolution(dead).converged);
    EXPECT_FALSE(modified_resolution(dead).converged);
    // phi = pi/4 is the top of the fringe
    EXPECT_FALSE(standard_resolution(InterferometerConfig::ideal(1.0), pi / 4).converged);
}

TEST(ModifiedResolution, NoRootForVeryLowGain) {
    // slope ~ 2G while sigma stays ~ 1: the defining equation has no root below pi/2
    const ResolutionResult r = modified_resolution(InterferometerConfig::ideal(0.05));
    EXPECT_FALSE(r.converged);
    EXPECT_FALSE(r.diagnostic.empty());
}

TEST(WorkingPoint, RelocationFindsDarkPoint) {
    const InterferometerConfig c = InterferometerConfig::ideal(1.5);
    EXPECT_NEAR(locate_noise_minimum(c, pi / 2 + 0.1), pi / 2, 1e-6);
    ResolutionOptions opt;
    opt.relocate_working_point = true;
    const ResolutionResult r = modified_resolution(c, pi / 2 + 0.05, opt);
    ASSERT_TRUE(r.converged);
    EXPECT_NEAR(r.working_point, pi / 2, 1e-6);
    EXPECT_NEAR(r.delta_phi, modified_resolution(c).delta_phi, 1e-8);
}

TEST(Criterion, ParseRoundTrip) {
    for (Criterion c : {Criterion::standard, Criterion::modified}) EXPECT_EQ(parse_criterion(to_string(c)), c);
    EXPECT_FALSE(parse_criterion("other"));
    for (const auto& [p, name] : sweep_parameter_names) EXPECT_EQ(parse_sweep_parameter(name), p);
    EXPECT_FALSE(parse_sweep_parameter("gamma"));
}

TEST(Grids, EndpointsAndSpacing) {
    const auto lin = linear_grid(0.0, 1.0, 11);
    ASSERT_EQ(lin.size(), 11u);
    EXPECT_EQ(lin.front(), 0.0);
    EXPECT_EQ(lin.back(), 1.0);
    EXPECT_NEAR(lin[3], 0.3, 1e-15);
    const auto lg = log_grid(0.5, 8.0, 5);
    EXPECT_EQ(lg.front(), 0.5);
    EXPECT_EQ(lg.back(), 8.0);
    EXPECT_NEAR(lg[2], 2.0, 1e-14);
    EXPECT_THROW(linear_grid(1.0, 0.0, 3), InvalidArgument);
    EXPECT_THROW(log_grid(0.0, 1.0, 3), InvalidArgument);
}

TEST(Sweep, RowsFollowGridAndThreadsGiveSameTable) {
    const InterferometerConfig c = InterferometerConfig::with_symmetric_losses(1.0, 0.0, 0.02);
    const auto grid = log_grid(0.5, 4.0, 9);
    const SweepTable one = sweep(c, SweepParameter::G, grid, Criterion::modified);
    const SweepTable many = sweep(c, SweepParameter::G, grid, Criterion::modified, default_working_point, {}, 3);
    ASSERT_EQ(one.rows.size(), grid.size());
    EXPECT_EQ(one.parameter, "G");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        EXPECT_EQ(one.rows[k].param, grid[k]);
        EXPECT_EQ(one.rows[k].gain, grid[k]);
        EXPECT_EQ(one.rows[k].delta_phi, many.rows[k].delta_phi);
        EXPECT_TRUE(one.rows[k].converged);
    }
}

TEST(Sweep, SymmetricParameterSetsBothArms) {
    const InterferometerConfig c = with_parameter(InterferometerConfig::ideal(1.0), SweepParameter::symmetric_alpha2, 0.2);
    EXPECT_EQ(c.alpha2, 0.2);
    EXPECT_EQ(c.beta2, 0.2);
    EXPECT_EQ(c.alpha1, 0.0);
}

TEST(Sweep, RejectsBadGrids) {
    const InterferometerConfig c = InterferometerConfig::ideal(1.0);
    EXPECT_THROW(sweep(c, SweepParameter::G, {}, Criterion::modified), InvalidArgument);
    EXPECT_THROW(sweep(c, SweepParameter::G, {1.0, 0.5}, Criterion::modified), InvalidArgument);
    EXPECT_THROW(sweep(c, SweepParameter::delta2, {0.1, 0.9}, Criterion::modified), InvalidArgument);
}

TEST(Saturation, DetectsFirstPlateau) {
    SweepTable t;
    for (double v : {1.0, 0.5, 0.3, 0.2009, 0.2003, 0.2, 0.2}) t.rows.push_back({0, 0, 0, v, 0, true, ""});
    EXPECT_DOUBLE_EQ(*saturation_level(t), 0.2);
    t.rows[4].converged = false;
    EXPECT_FALSE(saturation_level(t));
    SweepTable falling;
    for (double v : {1.0, 0.5, 0.25, 0.125}) falling.rows.push_back({0, 0, 0, v, 0, true, ""});
    EXPECT_FALSE(saturation_level(falling));
}

TEST(Imbalance, HeadlineOptimumAtHighGain) {
    const Delta2Optimum o = optimize_delta2(InterferometerConfig{}, 5.0);
    ASSERT_TRUE(o.bracketed) << o.diagnostic;
    EXPECT_NEAR(o.delta2_opt, -0.2375, 2e-3);
    EXPECT_NEAR(o.kappa_opt, 2.763, 5e-3);
    EXPECT_EQ(o.profile.size(), 41u);
}

TEST(Imbalance, KappaValuesAtFixedImbalance) {
    const InterferometerConfig c = InterferometerConfig::ideal(5.0);
    EXPECT_NEAR(kappa_at_delta2(c, 0.0), 4.0, 2e-3);
    EXPECT_NEAR(kappa_at_delta2(c, -1.0 / 3.0), 2.885, 5e-3);
    EXPECT_LT(kappa_at_delta2(c, -1.0 / 3.0), 4.0);
    EXPECT_TRUE(std::isinf(kappa_at_delta2(c, 0.7)));
}

TEST(Imbalance, KeepsOtherConfigFields) {
    InterferometerConfig c = InterferometerConfig::with_symmetric_losses(0.0, 0.0, 0.01);
    const Delta2Optimum lossy = optimize_delta2(c, 3.0, 21, 1e-4);
    const Delta2Optimum ideal = optimize_delta2(InterferometerConfig{}, 3.0, 21, 1e-4);
    ASSERT_TRUE(lossy.bracketed && ideal.bracketed);
    EXPECT_GT(lossy.kappa_opt, ideal.kappa_opt);
}

}  // namespace
}  // namespace sqint
