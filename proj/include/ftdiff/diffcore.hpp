#pragma once

// Vector fields of the three differentiators and the error coordinates.

#include <cmath>

namespace ftdiff {

enum class Algorithm { ContinuousFtd, Levant, SingularPerturbation };

/// Gains of one differentiator. For Levant, k1 multiplies the half-power term
/// and k2 the sign term. `alpha` is used by ContinuousFtd only (alpha = 0
/// degenerates to Levant), `epsilon` by SingularPerturbation only.
struct DiffParams {
    Algorithm algorithm = Algorithm::ContinuousFtd;
    double k1 = 1.0;
    double k2 = 1.0;
    double alpha = 0.5;
    double epsilon = 0.1;
    bool operator==(const DiffParams&) const = default;

    /// Exponent alpha that enters the Lyapunov function and the bounds:
    /// the configured alpha for ContinuousFtd, 0 for Levant.
    double effective_alpha() const noexcept {
        return algorithm == Algorithm::Levant ? 0.0 : alpha;
    }
};

struct DiffState {
    double x1 = 0.0;  // tracks v
    double x2 = 0.0;  // tracks v_dot
    bool operator==(const DiffState&) const = default;
};

struct ErrorState {
    double e1 = 0.0;
    double e2 = 0.0;
};

struct StateDerivative {
    double dx1 = 0.0;
    double dx2 = 0.0;
    bool operator==(const StateDerivative&) const = default;
};

/// |x|^p sgn(x), with sgn(0) = 0. p = 0 gives the sign function.
inline double sig_pow(double x, double p) noexcept {
    if (x == 0.0) return 0.0;
    if (p == 0.0) return x > 0.0 ? 1.0 : -1.0;
    return std::copysign(std::pow(std::fabs(x), p), x);
}

inline double sgn(double x) noexcept { return sig_pow(x, 0.0); }

StateDerivative ftd_rhs(const DiffState& state, double measurement, const DiffParams& params);
StateDerivative levant_rhs(const DiffState& state, double measurement, const DiffParams& params);
StateDerivative spt_rhs(const DiffState& state, double measurement, const DiffParams& params);

/// Dispatches on params.algorithm.
StateDerivative rhs(const DiffState& state, double measurement, const DiffParams& params);

inline ErrorState error_state(const DiffState& state, double v, double v_dot) noexcept {
    return {state.x1 - v, state.x2 - v_dot};
}

/// Throws ConfigInvalid when the invariants of the selected algorithm fail.
void validate(const DiffParams& params);

const char* to_string(Algorithm a) noexcept;

}  // namespace ftdiff
