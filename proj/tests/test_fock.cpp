#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "sqint/fock.hpp"
#include "sqint/moments.hpp"
#include "test_support.hpp"

namespace sqint {
namespace {

constexpr double pi = std::numbers::pi;

TEST(SimplexBasis, SizeAndRankRoundTrip) {
    for (std::size_t modes : {1u, 2u, 3u, 4u}) {
        for (std::size_t cap : {0u, 1u, 5u, 12u}) {
            const SimplexBasis b(modes, cap);
            std::size_t expected = 1;
            for (std::size_t k = 1; k <= modes; ++k) expected = expected * (cap + k) / k;
            ASSERT_EQ(b.size(), expected);
            for (std::size_t s = 0; s < b.size(); ++s) {
                ASSERT_EQ(b.rank(b.occupation(s)), s);
                ASSERT_LE(b.total(s), cap);
            }
        }
    }
}

TEST(SimplexBasis, LexicographicOrder) {
    const SimplexBasis b(2, 2);
    const std::array<std::array<int, 2>, 6> want{{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}}};
    for (std::size_t s = 0; s < b.size(); ++s) {
        EXPECT_EQ(b.occupation(s)[0], want[s][0]);
        EXPECT_EQ(b.occupation(s)[1], want[s][1]);
    }
    EXPECT_THROW(SimplexBasis(9, 2), InvalidArgument);
}

TEST(Cutoff, RequiredCutoffMeetsTailBound) {
    EXPECT_EQ(required_cutoff(0.0), 0u);
    for (double g : {0.1, 0.5, 1.0, 1.3}) {
        const std::size_t n = required_cutoff(g);
        const double t2 = std::pow(std::tanh(g), 2), c2 = std::pow(std::cosh(g), 2);
        EXPECT_LE(std::pow(t2, n + 1.0) / c2, 1e-14);
        EXPECT_GT(std::pow(t2, static_cast<double>(n)) / c2, 1e-14);
    }
    EXPECT_GT(required_cutoff(1.0), 40u);
}

TEST(Tmsv, AmplitudesAndNorm) {
    const double g = 0.6, xi = 0.4;
    const FockState s = tmsv_fock(g, xi, required_cutoff(g));
    EXPECT_LE(s.norm_deficit, 1e-14);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-14);
    const Complex lambda = Complex(0, -1) * std::exp(Complex(0, xi)) * std::tanh(g);
    for (int n = 0; n < 5; ++n) {
        const Complex want = std::pow(lambda, n) / std::cosh(g);
        EXPECT_LE(std::abs(s.amplitude(std::array<int, 2>{n, n}) - want), 1e-15);
    }
    EXPECT_EQ(s.amplitude(std::array<int, 2>{1, 0}), Complex{});
    EXPECT_NEAR(fock_mode_occupation(s, 0), std::pow(std::sinh(g), 2), 1e-12);
}

TEST(Tmsv, PinnedIntensities) {
    EXPECT_EQ(required_cutoff(0.5), 20u);
    EXPECT_NEAR(fock_mode_occupation(tmsv_fock(0.5, 0.0, 20), 0), 0.27154, 5e-6);
    EXPECT_NEAR(fock_mode_occupation(tmsv_fock(0.5, 0.0, 20), 0), std::pow(std::sinh(0.5), 2), 1e-12);
    const FockState s = tmsv_fock(1.0, 0.0, required_cutoff(1.0));
    EXPECT_NEAR(fock_mean_photon_number(s), 2.76220, 5e-6);
    EXPECT_NEAR(fock_mean_photon_number(s), 2 * std::pow(std::sinh(1.0), 2), 1e-10);
}

TEST(Tmsv, RefusesInsufficientCutoff) {
    EXPECT_THROW(tmsv_fock(1.0, 0.0, 40), CutoffError);
    EXPECT_NO_THROW(tmsv_fock(1.0, 0.0, required_cutoff(1.0)));
}

TEST(Tmsv, CovarianceMatchesGaussianEngine) {
    const double g = 0.5;
    const FockState f = tmsv_fock(g, 0.7, required_cutoff(g));
    const GaussianState s = apply_symplectic(vacuum_state(2), two_mode_squeezer(g, 0.7, 0, 1));
    EXPECT_LE((fock_covariance(f, {0, 1}) - s.cov()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(FockGates, PassiveGatesAreUnitary) {
    testing::Rng rng(21);
    FockState s = tmsv_fock(0.4, 0.2, required_cutoff(0.4), 3);
    for (int k = 0; k < 10; ++k) {
        const auto [i, j] = rng.pair(3);
        s = apply_beam_splitter_fock(s, {k % 2 ? BsVariant::B1 : BsVariant::B2, rng.uniform(-0.7, 0.7)}, i, j);
        s = apply_phase_fock(s, rng.uniform(-3, 3), i);
        EXPECT_NEAR(s.norm_squared(), 1.0 - s.norm_deficit, 1e-13);
    }
}

TEST(FockGates, SinglePhotonBeamSplitterAmplitudes) {
    FockState s;
    s.basis = SimplexBasis::get(2, 1);
    s.amplitudes.assign(s.basis->size(), Complex{});
    s.amplitudes[s.basis->rank(std::array<int, 2>{1, 0})] = 1.0;
    // a^dag -> M_00 a^dag + M_10 b^dag in the Schroedinger picture
    const BsSpec spec{BsVariant::B2, 0.13};
    const Eigen::Matrix2cd m = mode_matrix(spec);
    const FockState out = apply_beam_splitter_fock(s, spec, 0, 1);
    EXPECT_LE(std::abs(out.amplitude(std::array<int, 2>{1, 0}) - m(0, 0)), 1e-14);
    EXPECT_LE(std::abs(out.amplitude(std::array<int, 2>{0, 1}) - m(1, 0)), 1e-14);
}

TEST(FockGates, HongOuMandelDip) {
    FockState s;
    s.basis = SimplexBasis::get(2, 2);
    s.amplitudes.assign(s.basis->size(), Complex{});
    s.amplitudes[s.basis->rank(std::array<int, 2>{1, 1})] = 1.0;
    const FockState out = apply_beam_splitter_fock(s, {BsVariant::B1, 0.0}, 0, 1);
    EXPECT_LE(std::abs(out.amplitude(std::array<int, 2>{1, 1})), 1e-14);
    EXPECT_NEAR(std::norm(out.amplitude(std::array<int, 2>{2, 0})), 0.5, 1e-14);
}

TEST(FockGates, GateActionMatchesGaussianCovariance) {
    testing::Rng rng(22);
    for (int trial = 0; trial < 6; ++trial) {
        const double g = rng.uniform(0.1, 0.4);
        GaussianState gs = apply_symplectic(vacuum_state(3), two_mode_squeezer(g, 0.0, 0, 1));
        FockState fs = tmsv_fock(g, 0.0, required_cutoff(g), 3);
        for (int k = 0; k < 4; ++k) {
            const auto [i, j] = rng.pair(3);
            const BsSpec spec{rng.index(2) ? BsVariant::B1 : BsVariant::B2, rng.uniform(-0.7, 0.7)};
            const double phi = rng.uniform(-3, 3);
            gs = apply_symplectic(apply_symplectic(gs, beam_splitter(spec, i, j)), phase_shifter(phi, j));
            fs = apply_phase_fock(apply_beam_splitter_fock(fs, spec, i, j), phi, j);
        }
        EXPECT_LE((fock_covariance(fs, {0, 1, 2}) - gs.cov()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(FockGates, RejectsNonUnitaryMap) {
    const FockState s = tmsv_fock(0.2, 0.0, required_cutoff(0.2));
    EXPECT_THROW(apply_passive_fock(s, 2.0 * Eigen::Matrix2cd::Identity(), 0, 1), InvalidArgument);
    EXPECT_THROW(apply_passive_fock(s, Eigen::Matrix2cd::Identity(), 0, 0), InvalidArgument);
}

TEST(FockLoss, LossMovesPhotonsIntoAncilla) {
    const double g = 0.5, alpha = 0.3;
    FockState s = tmsv_fock(g, 0.0, required_cutoff(g), 3);
    s = apply_loss_fock(s, 0, 2, alpha);
    const double n0 = std::pow(std::sinh(g), 2);
    EXPECT_NEAR(fock_mode_occupation(s, 0), n0 * std::pow(std::cos(alpha), 2), 1e-12);
    EXPECT_NEAR(fock_mode_occupation(s, 2), n0 * std::pow(std::sin(alpha), 2), 1e-12);
    EXPECT_NEAR(fock_mean_photon_number(s), 2 * n0, 1e-12);
}

TEST(FockMoments, CutoffMarginIsEnforced) {
    // a deliberately thin basis leaves weight at its edge
    FockState s;
    s.basis = SimplexBasis::get(2, 4);
    s.amplitudes.assign(s.basis->size(), Complex{});
    s.amplitudes[s.basis->rank(std::array<int, 2>{2, 2})] = 1.0;
    EXPECT_THROW(fock_moments(s, 0, 1), CutoffError);
}

TEST(FockMoments, VacuumValues) {
    const FockState v = tmsv_fock(0.0, 0.0, 1);
    const FockMoments m = fock_moments(v, 0, 1);
    EXPECT_NEAR(m.m1, 0.0, 1e-15);
    EXPECT_NEAR(m.m2, 1.0, 1e-15);
}

TEST(FockPipeline, AgreesWithEngineOnSampleCases) {
    InterferometerConfig c = InterferometerConfig::with_symmetric_losses(0.4, 0.1, 0.05);
    c.delta1 = 0.05;
    c.delta2 = -0.1;
    c.xi = 0.3;
    for (double phi : {0.0, 0.9, pi / 2}) {
        const OracleOutcome o = check_oracle_case({c, phi});
        ASSERT_TRUE(o.error.empty()) << o.error;
        EXPECT_LE(o.deviation, 1e-10);
    }
    const FockState f = fock_pipeline(c, 0.9);
    EXPECT_EQ(f.n_modes(), 6u);
    EXPECT_NEAR(fock_mode_occupation(f, 0) + fock_mode_occupation(f, 1), evaluate(c, 0.9).mean_N, 1e-10);
}

TEST(FockPipeline, ReportsCutoffFailure) {
    const OracleOutcome o = check_oracle_case({InterferometerConfig::ideal(0.8), 0.3}, 3);
    EXPECT_FALSE(o.error.empty());
}

TEST(OracleGrid, DefaultGridShape) {
    const auto grid = default_oracle_grid();
    EXPECT_EQ(grid.size(), 3u * 3u * 9u * 5u);
    std::size_t prep = 0, arm = 0;
    for (const auto& c : grid) {
        prep += c.config.alpha1 > 0;
        arm += c.config.alpha2 > 0;
        EXPECT_NO_THROW(c.config.validate());
    }
    EXPECT_EQ(prep, grid.size() / 3);
    EXPECT_EQ(arm, grid.size() / 3);
}

}  // namespace
}  // namespace sqint
