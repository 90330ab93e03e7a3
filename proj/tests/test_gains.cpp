#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "ftdiff/analysis.hpp"
#include "ftdiff/errors.hpp"
#include "ftdiff/gains.hpp"

using namespace ftdiff;

namespace {

DiffParams ftd(double k1, double k2, double alpha) {
    return {Algorithm::ContinuousFtd, k1, k2, alpha, 0.1};
}

// Independent oracle: iterative symmetric eigensolver.
Eigen::Vector2d eigen_oracle(const Matrix2& m) {
    Eigen::Matrix2d a;
    a << m.a11, m.a12, m.a21, m.a22;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

}  // namespace

TEST(BuildP, ExampleTwoGains) {
    const auto P = build_P(ftd(6, 9, 0.2));
    EXPECT_DOUBLE_EQ(P.a11, 33.0);
    EXPECT_DOUBLE_EQ(P.a12, -3.0);
    EXPECT_DOUBLE_EQ(P.a21, -3.0);
    EXPECT_DOUBLE_EQ(P.a22, 1.0);
    EXPECT_TRUE(P.symmetric());
    EXPECT_GT(P.det(), 0.0);
}

TEST(BuildP, OffDiagonalVanishesWithK1) {
    const auto P = build_P(ftd(1e-12, 9, 0.2));
    EXPECT_NEAR(P.a12, 0.0, 1e-12);
}

TEST(BuildQ, ExampleTwoGains) {
    const auto Q = build_Q(ftd(6, 9, 0.2));
    EXPECT_NEAR(Q.a11, 3 * 61.2, 1e-12);
    EXPECT_NEAR(Q.a12, 3 * -7.2, 1e-12);
    EXPECT_NEAR(Q.a22, 3 * 1.2, 1e-12);
    EXPECT_TRUE(Q.symmetric());
    EXPECT_GT(Q.det(), 0.0);
}

TEST(BuildQ, SlidingModeLimit) {
    const auto Q = build_Q(ftd(6, 9, 0.0));
    EXPECT_DOUBLE_EQ(Q.a11, 3 * 54.0);
    EXPECT_DOUBLE_EQ(Q.a12, 3 * -6.0);
    EXPECT_DOUBLE_EQ(Q.a22, 3.0);
}

TEST(BuildPQ, PositiveDefiniteOverRandomGains) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> k(0.01, 50.0), a(0.0, 0.999);
    for (int i = 0; i < 10000; ++i) {
        const auto p = ftd(k(rng), k(rng), a(rng));
        for (const auto& m : {build_P(p), build_Q(p)}) {
            ASSERT_TRUE(m.symmetric());
            ASSERT_GT(m.a11, 0.0);
            ASSERT_GT(m.det(), 0.0);
        }
        // det(Q) (2/k1)^2 = 2 k2 (alpha + 1)
        const auto Q = build_Q(p);
        EXPECT_NEAR(Q.det() * 4 / (p.k1 * p.k1), 2 * p.k2 * (p.alpha + 1), 1e-9 * Q.a11 * Q.a11 * 4 / (p.k1 * p.k1));
    }
}

TEST(LambdaMinQ, MatchesEigensolverOnPresetGains) {
    for (const auto& p : {ftd(6, 30, 0.2), ftd(2, 25, 0.6), ftd(6, 9, 0.2)}) {
        const double oracle = eigen_oracle(build_Q(p))(0);
        EXPECT_NEAR(lambda_min_Q(p), oracle, 1e-10 * oracle);
    }
    // Frozen from the eigensolver for k1=6, k2=30, alpha=0.2.
    EXPECT_NEAR(lambda_min_Q(ftd(6, 30, 0.2)), 2.082816489556735, 1e-12);
}

TEST(LambdaMinQ, MatchesEigensolverOverRandomGains) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> k1(0.05, 20.0), k2(0.05, 100.0), a(0.0, 0.999);
    for (int i = 0; i < 10000; ++i) {
        const auto p = ftd(k1(rng), k2(rng), a(rng));
        const double oracle = eigen_oracle(build_Q(p))(0);
        ASSERT_NEAR(lambda_min_Q(p), oracle, 1e-10 * oracle);
        EXPECT_NEAR(symmetric_eigenvalues(build_Q(p)).min, oracle, 1e-10 * oracle);
    }
}

TEST(LambdaMinQ, VanishesWithK1) {
    EXPECT_LT(lambda_min_Q(ftd(1e-9, 30, 0.2)), 1e-9);
}

TEST(MinK2, Examples) {
    EXPECT_EQ(min_k2(6, 0.2, 0.0), 0.0);
    EXPECT_NEAR(min_k2(6, 0.2, 2.0), 320.0 / 43.2, 1e-12);
    EXPECT_NEAR(min_k2(3, 0.5, 4.0), 4 * min_k2(3, 0.5, 2.0), 1e-12);
}

TEST(DesignCheck, NoCurvatureIsAlwaysFeasible) {
    const auto r = design_check(ftd(6, 30, 0.2), 0.0);
    EXPECT_TRUE(r.feasible);
    EXPECT_EQ(r.zeta_status, BoundStatus::Available);
    ASSERT_TRUE(r.zeta_bound);
    EXPECT_EQ(*r.zeta_bound, 0.0);
    EXPECT_DOUBLE_EQ(r.l, std::sqrt(40.0));
    EXPECT_DOUBLE_EQ(r.l2, std::sqrt(37.0));
}

TEST(DesignCheck, SineInputWithL2TwoIsInfeasibleForAnyGains) {
    // lambda_min(Q) <= Q22 = k1 (a+1)/2 < k1 L2 < l L2 whenever L2 >= (a+1)/2.
    const auto r = design_check(ftd(6, 30, 0.2), 2.0);
    EXPECT_FALSE(r.feasible);
    EXPECT_EQ(r.zeta_status, BoundStatus::Infeasible);
    EXPECT_NEAR(r.lambda_min_Q, 2.082816489556735, 1e-12);
    EXPECT_NEAR(r.l * 2.0, 12.649110640673518, 1e-12);
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> k(0.01, 1000.0), a(0.0, 0.999);
    for (int i = 0; i < 10000; ++i) EXPECT_FALSE(design_check(ftd(k(rng), k(rng), a(rng)), 2.0).feasible);
}

TEST(DesignCheck, FeasibilityTracksTheEigenvalueCondition) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> k(0.1, 50.0), a(0.01, 0.99), L(0.0, 0.6);
    for (int i = 0; i < 10000; ++i) {
        const auto p = ftd(k(rng), k(rng), a(rng));
        const double L2 = L(rng);
        const auto r = design_check(p, L2);
        EXPECT_EQ(r.feasible, eigen_oracle(build_Q(p))(0) > std::hypot(p.k1, 2.0) * L2);
        // Just above the heuristic k2 bound need not be feasible.
        if (L2 > 0) {
            auto q = p;
            q.k2 = 1.01 * min_k2(p.k1, p.alpha, L2);
            const auto rq = design_check(q, L2);
            EXPECT_EQ(rq.feasible, lambda_min_Q(q) > rq.l * L2);
        }
    }
}

TEST(DesignCheck, BelowHeuristicK2IsInfeasible) {
    const double k1 = 3, a = 0.4, L2 = 0.2;
    auto p = ftd(k1, 0.9 * min_k2(k1, a, L2), a);
    EXPECT_FALSE(design_check(p, L2).feasible);
}

TEST(SteadyErrorBound, FeasibleValue) {
    const auto p = ftd(6, 30, 0.2);
    EXPECT_EQ(steady_error_bound(p, 0.0), 0.0);
    // (l L2 / lambda)^3 at alpha = 0.2
    const double ratio = std::sqrt(40.0) * 0.1 / lambda_min_Q(p);
    ASSERT_LT(ratio, 1.0);
    EXPECT_NEAR(steady_error_bound(p, 0.1), ratio * ratio * ratio, 1e-15);
    EXPECT_GT(steady_error_bound(p, 0.1), 0.0);
    EXPECT_LT(steady_error_bound(p, 0.1), 1.0);
}

TEST(SteadyErrorBound, Errors) {
    EXPECT_THROW(steady_error_bound(ftd(6, 30, 0.2), 2.0), InfeasibleGains);
    EXPECT_THROW(steady_error_bound(ftd(6, 30, 0.0), 0.1), AlphaZero);
    DiffParams lev{Algorithm::Levant, 6, 30, 0.7, 0.1};
    EXPECT_THROW(steady_error_bound(lev, 0.0), AlphaZero);
}

TEST(SteadyErrorBound, NondecreasingInL2) {
    const auto p = ftd(4, 20, 0.5);
    double prev = 0.0;
    for (double L2 = 0.0; L2 < 0.3; L2 += 0.01) {
        const double b = steady_error_bound(p, L2);
        EXPECT_GE(b, prev);
        prev = b;
    }
}

TEST(PsiTerms, Examples) {
    const auto p = ftd(2, 25, 0.6);
    const auto zero = psi_terms(p, 0.0);
    EXPECT_EQ(zero.psi1, 0.0);
    EXPECT_EQ(zero.psi2, 0.0);
    EXPECT_NEAR(psi_terms(p, 0.4).psi2 / psi_terms(p, 0.1).psi2, std::pow(4.0, 0.6), 1e-12);
    // Hand evaluation at sigma = 0.1: l2 = sqrt(5).
    const double l2 = std::sqrt(5.0);
    const auto t = psi_terms(p, 0.1);
    EXPECT_NEAR(t.psi1, 2 * (25 + 1.6 * l2) * std::pow(2.0, 0.2) * std::pow(0.1, 0.8), 1e-12);
    EXPECT_NEAR(t.psi2, 25 * (1 + l2) * std::pow(2.0, 0.4) * std::pow(0.1, 0.6), 1e-12);
    EXPECT_GT(t.psi1, 0.0);
}

TEST(NoisyErrorBound, Values) {
    const auto p = ftd(2, 25, 0.6);
    EXPECT_EQ(noisy_error_bound(p, 0.05, 0.0), 0.0);
    const double sigma = 1e-5;
    const auto psi = psi_terms(p, sigma);
    const double denom = lambda_min_Q(p) - std::sqrt(8.0) * 0.05 - psi.psi2;
    ASSERT_GT(denom, 0.0);
    EXPECT_NEAR(noisy_error_bound(p, 0.05, sigma), psi.psi1 / denom, 1e-15);
    EXPECT_THROW(noisy_error_bound(p, 2.0, 1e-3), BoundVacuous);
    EXPECT_THROW(noisy_error_bound(p, 2.0, 0.0), BoundVacuous);
}

TEST(NoisyErrorBound, NondecreasingInSigma) {
    const auto p = ftd(2, 25, 0.6);
    double prev = 0.0;
    for (double s = 0.0; s <= 2e-5; s += 1e-6) {
        const double b = noisy_error_bound(p, 0.05, s);
        EXPECT_GE(b, prev);
        prev = b;
    }
}

TEST(DesignCheck, NoisyStatus) {
    const auto ok = design_check(ftd(2, 25, 0.6), 0.05, 1e-5);
    EXPECT_EQ(ok.noisy_status, BoundStatus::Available);
    ASSERT_TRUE(ok.noisy_bound);
    const auto vac = design_check(ftd(2, 25, 0.6), 2.0, 1e-3);
    EXPECT_EQ(vac.noisy_status, BoundStatus::Vacuous);
    EXPECT_FALSE(vac.noisy_bound);
    const auto spt = design_check({Algorithm::SingularPerturbation, 1, 1, 0, 0.1}, 2.0);
    EXPECT_EQ(spt.zeta_status, BoundStatus::NotApplicable);
}

TEST(RayleighSandwich, HoldsForRandomErrors) {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> e(-10.0, 10.0), k(0.1, 30.0), a(0.0, 0.99);
    for (int i = 0; i < 10000; ++i) {
        const auto p = ftd(k(rng), k(rng), a(rng));
        const auto eig = eigen_oracle(build_P(p));
        const ErrorState err{e(rng), e(rng)};
        const double z2 = std::pow(zeta_norm(err, p.alpha), 2);
        const double V = lyapunov_V(err, p);
        const double slack = 1e-12 * std::max(1.0, V);
        EXPECT_LE(eig(0) * z2, V + slack);
        EXPECT_LE(V, eig(1) * z2 + slack);
    }
}

TEST(SettlingTimeBound, Examples) {
    EXPECT_EQ(settling_time_bound(0.0, 1.3, 0.6), 0.0);
    EXPECT_NEAR(settling_time_bound(8.0, 2.0, 0.5) / settling_time_bound(4.0, 2.0, 0.5), std::sqrt(2.0), 1e-14);
    EXPECT_THROW(settling_time_bound(1.0, 0.0, 0.5), std::invalid_argument);
    EXPECT_THROW(settling_time_bound(1.0, 1.0, 1.0), std::invalid_argument);
}

TEST(FiniteTimeRate, ExampleTwo) {
    const auto p = ftd(6, 9, 0.2);
    const auto rate = finite_time_rate(p);
    EXPECT_DOUBLE_EQ(rate.theta, 1.6 / 2.4);
    const double lp = eigen_oracle(build_P(p))(0), lq = eigen_oracle(build_Q(p))(0);
    EXPECT_NEAR(rate.c, std::pow(lp, 0.8 / 2.4) * lq / lp, 1e-12);
    // V0 = 33 at e = (1, 0) gives a bound of about 7.41 s.
    EXPECT_NEAR(settling_time_bound(33.0, rate.c, rate.theta), 7.410284576208563, 1e-9);
}
