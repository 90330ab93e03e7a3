#pragma once

// Gain design and error bounds for the continuous differentiator:
// Lyapunov matrices P and Q, the feasibility test lambda_min(Q) > l*L2,
// the steady-state zeta bound and its noisy counterpart.

#include <optional>
#include <string>

#include "ftdiff/diffcore.hpp"

namespace ftdiff {

struct Matrix2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    double trace() const noexcept { return a11 + a22; }
    double det() const noexcept { return a11 * a22 - a12 * a21; }
    bool symmetric() const noexcept { return a12 == a21; }
};

/// Eigenvalues of a symmetric 2x2 matrix, ascending.
struct EigenPair2 {
    double min = 0.0, max = 0.0;
};
EigenPair2 symmetric_eigenvalues(const Matrix2& m);

/// V = zeta^T P zeta with zeta = (sig_pow(e1, (a+1)/2), e2).
Matrix2 build_P(const DiffParams& params);
/// Vdot = -|e1|^((a-1)/2) zeta^T Q zeta along the unperturbed error field.
Matrix2 build_Q(const DiffParams& params);

/// Closed-form smallest eigenvalue of Q.
double lambda_min_Q(const DiffParams& params);

/// ||[k1 -2]||_2
double l_coefficient(double k1);
/// ||[k1 -1]||_2
double l2_coefficient(double k1);

/// Heuristic lower bound on k2: 2 (k1^2 + 4) L2^2 / (k1^2 (alpha + 1)).
/// Necessary but not sufficient for feasibility.
double min_k2(double k1, double alpha, double L2);

struct PsiTerms {
    double psi1 = 0.0;
    double psi2 = 0.0;
};
PsiTerms psi_terms(const DiffParams& params, double sigma);

/// zeta bound (l L2 / lambda_min(Q))^((a+1)/(2a)). Throws AlphaZero for
/// a = 0 and InfeasibleGains when lambda_min(Q) <= l L2.
double steady_error_bound(const DiffParams& params, double L2);

/// Psi1 / (lambda_min(Q) - l1 L2 - Psi2). Throws BoundVacuous when the
/// denominator is not positive.
double noisy_error_bound(const DiffParams& params, double L2, double sigma);

enum class BoundStatus { Available, Infeasible, AlphaZero, Vacuous, NotApplicable };
const char* to_string(BoundStatus s) noexcept;

struct BoundReport {
    double L2 = 0.0;
    double sigma = 0.0;
    double lambda_min_Q = 0.0;
    double l = 0.0;   // ||[k1 -2]||
    double l1 = 0.0;  // same norm, noisy theorem
    double l2 = 0.0;  // ||[k1 -1]||
    double psi1 = 0.0;
    double psi2 = 0.0;
    bool feasible = false;  // lambda_min(Q) > l L2
    BoundStatus zeta_status = BoundStatus::NotApplicable;
    std::optional<double> zeta_bound;
    BoundStatus noisy_status = BoundStatus::NotApplicable;
    std::optional<double> noisy_bound;
};

/// Feasibility and all bound terms for one gain set. Only meaningful for
/// ContinuousFtd and Levant; singular perturbation yields NotApplicable.
BoundReport design_check(const DiffParams& params, double L2, double sigma = 0.0);

/// Decay constants (c, theta) with Vdot <= -c V^theta for the unperturbed continuous system.
struct DecayRate {
    double c = 0.0;
    double theta = 0.0;
};
DecayRate finite_time_rate(const DiffParams& params);

/// V0^(1-theta) / (c (1-theta)).
double settling_time_bound(double V0, double c, double theta);

}  // namespace ftdiff
