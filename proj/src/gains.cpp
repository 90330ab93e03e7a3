#include "ftdiff/gains.hpp"

#include <cmath>
#include <stdexcept>

#include "ftdiff/errors.hpp"

namespace ftdiff {

EigenPair2 symmetric_eigenvalues(const Matrix2& m) {
    const double mean = 0.5 * m.trace();
    const double radius = std::hypot(0.5 * (m.a11 - m.a22), m.a12);
    // Recover the smaller-magnitude root from the determinant to avoid cancellation.
    if (mean >= 0.0) {
        const double big = mean + radius;
        return {big == 0.0 ? 0.0 : m.det() / big, big};
    }
    const double small = mean - radius;
    return {small, m.det() / small};
}

Matrix2 build_P(const DiffParams& p) {
    const double a = p.effective_alpha() + 1.0;
    return {0.5 * (4.0 * p.k2 / a + p.k1 * p.k1), -0.5 * p.k1, -0.5 * p.k1, 1.0};
}

Matrix2 build_Q(const DiffParams& p) {
    const double a = p.effective_alpha() + 1.0;
    const double h = 0.5 * p.k1;
    const double off = -h * p.k1 * a;
    return {h * (2.0 * p.k2 + p.k1 * p.k1 * a), off, off, h * a};
}

double lambda_min_Q(const DiffParams& p) {
    // Q = (k1/2) M with tr M = 2k2 + (k1^2 + 1)(a + 1) and det M = 2 k2 (a + 1).
    const double a = p.effective_alpha() + 1.0;
    const double tr = 2.0 * p.k2 + (p.k1 * p.k1 + 1.0) * a;
    const double det = 2.0 * p.k2 * a;
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    return 0.5 * p.k1 * (2.0 * det / (tr + disc));
}

double l_coefficient(double k1) { return std::hypot(k1, 2.0); }
double l2_coefficient(double k1) { return std::hypot(k1, 1.0); }

double min_k2(double k1, double alpha, double L2) {
    return 2.0 * (k1 * k1 + 4.0) * L2 * L2 / (k1 * k1 * (alpha + 1.0));
}

PsiTerms psi_terms(const DiffParams& p, double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("psi_terms: sigma must be >= 0");
    const double a = p.effective_alpha();
    const double l2 = l2_coefficient(p.k1);
    return {p.k1 * (p.k2 + 0.5 * p.k1 * (a + 1.0) * l2) * std::pow(2.0, 0.5 * (1.0 - a)) *
                std::pow(sigma, 0.5 * (a + 1.0)),
            p.k2 * (1.0 + l2) * std::pow(2.0, 1.0 - a) * std::pow(sigma, a)};
}

double steady_error_bound(const DiffParams& p, double L2) {
    const double a = p.effective_alpha();
    if (a == 0.0)
        throw AlphaZero("alpha = 0: the error converges exactly, the zeta bound degenerates");
    const double lambda = lambda_min_Q(p);
    const double lL2 = l_coefficient(p.k1) * L2;
    if (!(lambda > lL2))
        throw InfeasibleGains("lambda_min(Q) = " + std::to_string(lambda) +
                              " does not exceed l*L2 = " + std::to_string(lL2));
    return std::pow(lL2 / lambda, (a + 1.0) / (2.0 * a));
}

double noisy_error_bound(const DiffParams& p, double L2, double sigma) {
    const auto psi = psi_terms(p, sigma);
    const double denom = lambda_min_Q(p) - l_coefficient(p.k1) * L2 - psi.psi2;
    if (!(denom > 0.0))
        throw BoundVacuous("lambda_min(Q) - l1*L2 - Psi2(sigma) = " + std::to_string(denom) +
                           " is not positive");
    return psi.psi1 / denom;
}

BoundReport design_check(const DiffParams& p, double L2, double sigma) {
    BoundReport r;
    r.L2 = L2;
    r.sigma = sigma;
    if (p.algorithm == Algorithm::SingularPerturbation) return r;

    r.lambda_min_Q = lambda_min_Q(p);
    r.l = l_coefficient(p.k1);
    r.l1 = r.l;
    r.l2 = l2_coefficient(p.k1);
    const auto psi = psi_terms(p, sigma);
    r.psi1 = psi.psi1;
    r.psi2 = psi.psi2;
    r.feasible = r.lambda_min_Q > r.l * L2;

    if (p.effective_alpha() == 0.0) {
        r.zeta_status = BoundStatus::AlphaZero;
        r.noisy_status = BoundStatus::AlphaZero;
        return r;
    }
    if (r.feasible) {
        r.zeta_status = BoundStatus::Available;
        r.zeta_bound = steady_error_bound(p, L2);
    } else {
        r.zeta_status = BoundStatus::Infeasible;
    }
    if (r.lambda_min_Q - r.l1 * L2 - r.psi2 > 0.0) {
        r.noisy_status = BoundStatus::Available;
        r.noisy_bound = noisy_error_bound(p, L2, sigma);
    } else {
        r.noisy_status = BoundStatus::Vacuous;
    }
    return r;
}

DecayRate finite_time_rate(const DiffParams& p) {
    const double a = p.effective_alpha();
    const double lp = symmetric_eigenvalues(build_P(p)).min;
    const double lq = lambda_min_Q(p);
    return {std::pow(lp, (1.0 - a) / (2.0 * (a + 1.0))) * lq / lp,
            (3.0 * a + 1.0) / (2.0 * (a + 1.0))};
}

double settling_time_bound(double V0, double c, double theta) {
    if (!(c > 0.0)) throw std::invalid_argument("settling_time_bound: c must be > 0");
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("settling_time_bound: theta must lie in (0, 1)");
    if (!(V0 >= 0.0)) throw std::invalid_argument("settling_time_bound: V0 must be >= 0");
    return std::pow(V0, 1.0 - theta) / (c * (1.0 - theta));
}

const char* to_string(BoundStatus s) noexcept {
    switch (s) {
        case BoundStatus::Available: return "available";
        case BoundStatus::Infeasible: return "infeasible-gains";
        case BoundStatus::AlphaZero: return "alpha-zero";
        case BoundStatus::Vacuous: return "bound-vacuous";
        case BoundStatus::NotApplicable: return "not-applicable";
    }
    return "?";
}

}  // namespace ftdiff
