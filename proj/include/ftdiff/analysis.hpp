#pragma once

// Verification and frequency analysis of simulated differentiators.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ftdiff/diffcore.hpp"
#include "ftdiff/gains.hpp"
#include "ftdiff/sim.hpp"

namespace ftdiff {

/// (2/pi) * integral_0^pi |sin x|^p dx, to 1e-9 absolute.
double omega_integral(double p);

/// First-harmonic gain of x -> sig_pow(x, p) at sinusoid amplitude A:
/// A^(p-1) * omega_integral(p + 1).
double describing_fn(double A, double p);

struct FrequencyReport {
    double amplitude = 0.0;
    double describing_gain_half = 0.0;  // gain of the k1 nonlinearity
    double describing_gain_full = 0.0;  // gain of the k2 nonlinearity
    double natural_frequency = 0.0;
    double damping = 0.0;
};

/// Describing-function linearization of Levant or ContinuousFtd at error
/// amplitude A.
FrequencyReport linearized_frequency(const DiffParams& params, double A);

/// Lyapunov function of the continuous differentiator (alpha = 0 gives the
/// Levant variant).
double lyapunov_V(const ErrorState& e, const DiffParams& params);

/// ||zeta||_2 = sqrt(|e1|^(a+1) + e2^2).
double zeta_norm(const ErrorState& e, double alpha);

struct DecayCheckOptions {
    double deadband = 1e-6;          // samples with ||zeta|| below this are skipped
    double relative_tolerance = 1e-3;  // tolerance on Vdot + c V^theta, times max(V)
};

/// Fraction of interior samples where the centered-difference Vdot satisfies
/// Vdot + c V^theta <= relative_tolerance * max(V). Returns 1 when no
/// interior sample lies outside the deadband.
double lyapunov_decay_check(const Trajectory& traj, const DiffParams& params, double c,
                            double theta, const DecayCheckOptions& opts = {});

/// Max relative error of the dilation identity
/// f_i(rho^r1 e1, rho^r2 e2) = rho^(r_i + k) f_i(e1, e2) for the unperturbed
/// continuous error field with r = (2, a+1). `degree` defaults to a - 1.
double homogeneity_check(const DiffParams& params, std::size_t sample_count,
                         std::uint64_t seed = 1, std::optional<double> degree = std::nullopt);

/// Total variation of x2 per unit time over [window_start, t_end].
double chattering_index(const Trajectory& traj, double window_start);

struct ScalingFit {
    double slope_e1 = 0.0;
    double slope_e2 = 0.0;
};

/// Least-squares slopes of log(sup|e|) against log(sigma).
ScalingFit noise_scaling_fit(std::span<const double> sigmas,
                             std::span<const std::pair<double, double>> errors);

struct BoundCheck {
    std::string name;
    double bound_value = 0.0;
    double observed_value = 0.0;
    bool pass = false;
};

struct AnalysisReport {
    double window_start = 0.0;
    double rms_e1 = 0.0, rms_e2 = 0.0;
    double max_e1 = 0.0, max_e2 = 0.0;
    double max_zeta = 0.0;
    double chattering_index = 0.0;
    std::optional<double> lyapunov_violations;
    std::vector<BoundCheck> bound_checks;
    std::vector<std::string> notes;  // why a bound check was not recorded
};

/// Steady-window error statistics.
AnalysisReport steady_state_metrics(const Trajectory& traj, double alpha, double window_start);

/// Checks the steady sup of ||zeta|| against the applicable bound: the
/// noiseless zeta bound for sigma = 0, the noisy bound otherwise. Records a
/// note instead of a check when that bound is unavailable.
AnalysisReport bound_audit(const Trajectory& traj, const DiffParams& params,
                           const BoundReport& report, double sigma, double window_start);

}  // namespace ftdiff
