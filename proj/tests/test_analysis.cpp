#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ftdiff/analysis.hpp"
#include "ftdiff/errors.hpp"

using namespace ftdiff;
using std::numbers::pi;

namespace {

// Closed form (2/pi) B((p+1)/2, 1/2).
double omega_closed_form(double p) { return 2.0 / pi * std::beta((p + 1.0) / 2.0, 0.5); }

DiffParams ftd(double k1, double k2, double alpha) { return {Algorithm::ContinuousFtd, k1, k2, alpha, 0.1}; }
DiffParams levant(double k1, double k2) { return {Algorithm::Levant, k1, k2, 0.0, 0.1}; }

Trajectory make_traj(std::size_t n, double dt, auto x2_of_t) {
    Trajectory t;
    t.sample_period = dt;
    for (std::size_t i = 0; i < n; ++i) {
        const double ti = dt * static_cast<double>(i);
        t.t.push_back(ti);
        t.v.push_back(0);
        t.v_dot.push_back(0);
        t.x1.push_back(0);
        t.x2.push_back(x2_of_t(ti));
        t.e1.push_back(0);
        t.e2.push_back(t.x2.back());
        t.V.push_back(0);
    }
    return t;
}

}  // namespace

TEST(OmegaIntegral, PinnedValues) {
    EXPECT_NEAR(omega_integral(1.0), 4.0 / pi, 1e-9);
    EXPECT_NEAR(omega_integral(2.0), 1.0, 1e-9);
    EXPECT_NEAR(omega_integral(0.0), 2.0, 1e-9);
    const double mid = omega_integral(1.5);
    EXPECT_GT(mid, 1.0);
    EXPECT_LT(mid, 4.0 / pi);
    EXPECT_NEAR(mid, omega_closed_form(1.5), 1e-9);
}

TEST(OmegaIntegral, MatchesBetaClosedFormAcrossExponents) {
    for (double p : {0.05, 0.2, 0.5, 0.6, 1.1, 1.2, 1.6, 1.8, 2.5, 3.0})
        EXPECT_NEAR(omega_integral(p), omega_closed_form(p), 1e-9) << "p = " << p;
}

TEST(OmegaIntegral, StrictlyDecreasingOnOneToTwo) {
    double prev = omega_integral(1.0);
    for (int i = 1; i <= 100; ++i) {
        const double cur = omega_integral(1.0 + i / 100.0);
        EXPECT_LT(cur, prev);
        prev = cur;
    }
}

TEST(OmegaIntegral, RejectsNegativeExponent) {
    EXPECT_THROW(omega_integral(-0.1), std::invalid_argument);
}

TEST(DescribingFn, Examples) {
    EXPECT_NEAR(describing_fn(1.0, 0.0), 4.0 / pi, 1e-9);
    for (double A : {0.01, 1.0, 37.0}) {
        EXPECT_NEAR(describing_fn(A, 1.0), 1.0, 1e-9);
        EXPECT_NEAR(describing_fn(A, 0.0), 4.0 / (pi * A), 1e-9 / A);
    }
    EXPECT_NEAR(describing_fn(4.0, 0.5), omega_closed_form(1.5) / 2.0, 1e-9);
    EXPECT_THROW(describing_fn(0.0, 0.5), std::invalid_argument);
}

TEST(DescribingFn, ContinuousInExponentAtHalf) {
    const double at = describing_fn(0.3, 0.5);
    EXPECT_NEAR(describing_fn(0.3, 0.5 + 1e-7), at, 1e-5);
    EXPECT_NEAR(describing_fn(0.3, 0.5 - 1e-7), at, 1e-5);
    EXPECT_NEAR(at, omega_integral(1.5) / std::sqrt(0.3), 1e-12);
}

TEST(LinearizedFrequency, LevantDampingIndependentOfAmplitude) {
    const auto p = levant(6, 9);
    const double z = linearized_frequency(p, 1.0).damping;
    for (double A : {0.01, 100.0}) EXPECT_NEAR(linearized_frequency(p, A).damping, z, 1e-12);
    EXPECT_NEAR(z, 6 * omega_closed_form(1.5) * std::sqrt(pi) / 12.0, 1e-9);
    EXPECT_NEAR(linearized_frequency(p, 1.0).natural_frequency, 2 * std::sqrt(9 / pi), 1e-12);
}

TEST(LinearizedFrequency, ContinuousPowerLaw) {
    const auto p = ftd(6, 30, 0.2);
    const double ratio = linearized_frequency(p, 1.0).natural_frequency /
                         linearized_frequency(p, 0.01).natural_frequency;
    EXPECT_NEAR(ratio, std::pow(0.01, 0.4), 1e-12);
    const double z = linearized_frequency(p, 1.0).damping;
    EXPECT_NEAR(linearized_frequency(p, 1e-3).damping, z, 1e-12);
}

TEST(LinearizedFrequency, ContinuousSlowerThanLevantAtSmallAmplitude) {
    const double A = 1e-4;
    EXPECT_LT(linearized_frequency(ftd(6, 30, 0.2), A).natural_frequency,
              linearized_frequency(levant(6, 30), A).natural_frequency);
}

TEST(LinearizedFrequency, AlphaZeroMatchesLevant) {
    const auto c = linearized_frequency(ftd(3, 11, 0.0), 0.2), l = linearized_frequency(levant(3, 11), 0.2);
    EXPECT_NEAR(c.natural_frequency, l.natural_frequency, 1e-8);
    EXPECT_NEAR(c.damping, l.damping, 1e-8);
    EXPECT_NEAR(c.describing_gain_full, l.describing_gain_full, 1e-8);
}

TEST(LinearizedFrequency, RejectsSingularPerturbation) {
    EXPECT_THROW(linearized_frequency({Algorithm::SingularPerturbation, 1, 1, 0, 0.1}, 1.0),
                 std::invalid_argument);
}

TEST(LyapunovV, Examples) {
    const auto p = ftd(6, 30, 0.2);
    EXPECT_EQ(lyapunov_V({0, 0}, p), 0.0);
    EXPECT_NEAR(lyapunov_V({1, 0}, p), 68.0, 1e-12);
    EXPECT_NEAR(lyapunov_V({1, 0}, ftd(6, 9, 0.2)), 33.0, 1e-12);
}

TEST(LyapunovV, EvenAndPositiveDefinite) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> e(-5.0, 5.0), k(0.1, 30.0), a(0.0, 0.99);
    for (int i = 0; i < 10000; ++i) {
        const auto p = ftd(k(rng), k(rng), a(rng));
        const ErrorState s{e(rng), e(rng)};
        EXPECT_EQ(lyapunov_V(s, p), lyapunov_V({-s.e1, -s.e2}, p));
        EXPECT_GT(lyapunov_V(s, p), 0.0);
    }
}

TEST(Homogeneity, ExactUpToRounding) {
    EXPECT_LE(homogeneity_check(ftd(6, 9, 0.2), 10000), 1e-9);
    EXPECT_LE(homogeneity_check(ftd(2, 25, 0.6), 10000, 99), 1e-9);
}

TEST(Homogeneity, WrongDegreeIsDetected) {
    EXPECT_GT(homogeneity_check(ftd(6, 9, 0.2), 10000, 1, 0.2), 1e-3);
}

TEST(ChatteringIndex, Examples) {
    const auto flat = make_traj(1001, 0.01, [](double) { return 3.0; });
    EXPECT_EQ(chattering_index(flat, 2.0), 0.0);

    const std::size_t n = 200001;
    const double dt = 2 * pi / (n - 1);
    const auto sine = make_traj(n, dt, [](double t) { return std::sin(t); });
    EXPECT_NEAR(chattering_index(sine, 0.0), 4.0 / (2 * pi), 1e-9);
    EXPECT_THROW(chattering_index(sine, 10.0), std::invalid_argument);
}

TEST(NoiseScalingFit, ExactPowerLaw) {
    const std::vector<double> s{1e-4, 1e-3, 1e-2, 3e-2};
    std::vector<std::pair<double, double>> e;
    for (double x : s) e.emplace_back(3 * x, 2 * std::sqrt(x));
    const auto fit = noise_scaling_fit(s, e);
    EXPECT_NEAR(fit.slope_e1, 1.0, 1e-9);
    EXPECT_NEAR(fit.slope_e2, 0.5, 1e-9);
}

TEST(NoiseScalingFit, Preconditions) {
    const std::vector<double> one{1e-3};
    const std::vector<std::pair<double, double>> e1{{1e-3, 1e-2}};
    EXPECT_THROW(noise_scaling_fit(one, e1), std::invalid_argument);
    const std::vector<double> repeated{1e-3, 1e-3, 1e-2};
    const std::vector<std::pair<double, double>> e3{{1, 1}, {1, 1}, {2, 2}};
    EXPECT_THROW(noise_scaling_fit(repeated, e3), std::invalid_argument);
    const std::vector<double> s{1e-4, 1e-3, 1e-2};
    const std::vector<std::pair<double, double>> bad{{1, 1}, {0, 1}, {2, 2}};
    EXPECT_THROW(noise_scaling_fit(s, bad), DegenerateFit);
}

TEST(LyapunovDecayCheck, EquilibriumTrajectoryIsTriviallyFine) {
    const auto traj = make_traj(100, 0.01, [](double) { return 0.0; });
    EXPECT_EQ(lyapunov_decay_check(traj, ftd(6, 9, 0.2), 1.0, 0.5), 1.0);
}

TEST(BoundAudit, ZeroErrorTrajectoryPasses) {
    const auto traj = make_traj(100, 0.01, [](double) { return 0.0; });
    const auto p = ftd(6, 30, 0.2);
    const auto r = bound_audit(traj, p, design_check(p, 0.0), 0.0, 0.5);
    ASSERT_EQ(r.bound_checks.size(), 1u);
    EXPECT_TRUE(r.bound_checks[0].pass);
    EXPECT_EQ(r.bound_checks[0].observed_value, 0.0);
}

TEST(BoundAudit, VacuousBoundRecordsNoCheck) {
    const auto traj = make_traj(100, 0.01, [](double) { return 0.0; });
    const auto p = ftd(2, 25, 0.6);
    const auto r = bound_audit(traj, p, design_check(p, 2.0, 0.01), 0.01, 0.5);
    EXPECT_TRUE(r.bound_checks.empty());
    ASSERT_EQ(r.notes.size(), 1u);
    EXPECT_NE(r.notes[0].find("bound-vacuous"), std::string::npos);
}
