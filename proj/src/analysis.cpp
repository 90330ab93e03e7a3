#include "ftdiff/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ftdiff/errors.hpp"

namespace ftdiff {
namespace {

using std::numbers::pi;

// Composite Simpson on (4/pi) * int_0^{pi/2} sin(th)^p dth after th = u^2,
// which turns the th^p endpoint behaviour into the milder u^(2p+1).
double simpson_omega(double p, std::size_t panels) {
    const double upper = std::sqrt(pi / 2.0);
    const double h = upper / static_cast<double>(panels);
    auto g = [p](double u) {
        const double s = std::sin(u * u);
        return 2.0 * u * (p == 0.0 ? 1.0 : std::pow(s, p));
    };
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i < panels; ++i) {
        const double val = g(h * static_cast<double>(i));
        (i % 2 == 1 ? odd : even) += val;
    }
    const double integral = h / 3.0 * (g(0.0) + 4.0 * odd + 2.0 * even + g(upper));
    return 4.0 / pi * integral;
}

struct ErrorField {
    double f1, f2;
};

ErrorField continuous_error_field(double e1, double e2, double k1, double k2, double a) {
    return {e2 - k1 * sig_pow(e1, (a + 1.0) / 2.0), -k2 * sig_pow(e1, a)};
}

}  // namespace

double omega_integral(double p) {
    if (!(p >= 0.0)) throw std::invalid_argument("omega_integral: p must be >= 0");
    std::size_t panels = 1u << 17;
    double coarse = simpson_omega(p, panels);
    for (int refinements = 0; refinements < 6; ++refinements) {
        panels *= 2;
        const double fine = simpson_omega(p, panels);
        if (std::fabs(fine - coarse) < 1e-11) return fine;
        coarse = fine;
    }
    return coarse;
}

double describing_fn(double A, double p) {
    if (!(A > 0.0)) throw std::invalid_argument("describing_fn: amplitude must be > 0");
    return std::pow(A, p - 1.0) * omega_integral(p + 1.0);
}

FrequencyReport linearized_frequency(const DiffParams& params, double A) {
    if (!(A > 0.0)) throw std::invalid_argument("linearized_frequency: amplitude must be > 0");
    const double k1 = params.k1, k2 = params.k2;
    FrequencyReport r;
    r.amplitude = A;
    switch (params.algorithm) {
        case Algorithm::Levant: {
            const double omega = omega_integral(1.5);
            r.describing_gain_half = omega / std::sqrt(A);
            r.describing_gain_full = 4.0 / (pi * A);
            r.natural_frequency = 2.0 * std::sqrt(k2 / pi) / std::sqrt(A);
            r.damping = k1 * omega * std::sqrt(pi) / (4.0 * std::sqrt(k2));
            return r;
        }
        case Algorithm::ContinuousFtd: {
            const double a = params.alpha;
            const double omega1 = omega_integral((a + 3.0) / 2.0);
            const double omega2 = omega_integral(a + 1.0);
            r.describing_gain_half = std::pow(A, (a - 1.0) / 2.0) * omega1;
            r.describing_gain_full = std::pow(A, a - 1.0) * omega2;
            r.natural_frequency = std::sqrt(k2 * omega2) / std::pow(A, (1.0 - a) / 2.0);
            r.damping = k1 * omega1 / (2.0 * std::sqrt(k2 * omega2));
            return r;
        }
        case Algorithm::SingularPerturbation: break;
    }
    throw std::invalid_argument("linearized_frequency: no describing-function model for " +
                                std::string(to_string(params.algorithm)));
}

double lyapunov_V(const ErrorState& e, const DiffParams& params) {
    const double a = params.effective_alpha() + 1.0;
    const double cross = params.k1 * sig_pow(e.e1, a / 2.0) - e.e2;
    return 2.0 * params.k2 / a * std::pow(std::fabs(e.e1), a) + 0.5 * e.e2 * e.e2 +
           0.5 * cross * cross;
}

double zeta_norm(const ErrorState& e, double alpha) {
    return std::sqrt(std::pow(std::fabs(e.e1), alpha + 1.0) + e.e2 * e.e2);
}

double lyapunov_decay_check(const Trajectory& traj, const DiffParams& params, double c,
                            double theta, const DecayCheckOptions& opts) {
    if (!traj.has_lyapunov())
        throw std::invalid_argument("lyapunov_decay_check: trajectory carries no V column");
    const std::size_t n = traj.size();
    if (n < 3) return 1.0;
    const double v_max = *std::max_element(traj.V.begin(), traj.V.end());
    const double tol = opts.relative_tolerance * v_max;
    const double h = traj.sample_period;
    const double a = params.effective_alpha();

    std::size_t considered = 0, satisfied = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (zeta_norm({traj.e1[i], traj.e2[i]}, a) < opts.deadband) continue;
        ++considered;
        const double v_dot = (traj.V[i + 1] - traj.V[i - 1]) / (2.0 * h);
        if (v_dot + c * std::pow(traj.V[i], theta) <= tol) ++satisfied;
    }
    return considered == 0 ? 1.0 : static_cast<double>(satisfied) / static_cast<double>(considered);
}

double homogeneity_check(const DiffParams& params, std::size_t sample_count, std::uint64_t seed,
                         std::optional<double> degree) {
    const double a = params.alpha;
    const double k = degree.value_or(a - 1.0);
    const double r1 = 2.0, r2 = a + 1.0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> err(-5.0, 5.0), dil(0.1, 10.0);

    double worst = 0.0;
    for (std::size_t s = 0; s < sample_count; ++s) {
        const double e1 = err(rng), e2 = err(rng), rho = dil(rng);
        const auto base = continuous_error_field(e1, e2, params.k1, params.k2, a);
        const auto scaled = continuous_error_field(std::pow(rho, r1) * e1, std::pow(rho, r2) * e2,
                                                   params.k1, params.k2, a);
        // Relative to the magnitude of the terms, so cancellation inside f1 is not amplified.
        const double mag1 = std::fabs(e2) + params.k1 * std::pow(std::fabs(e1), (a + 1.0) / 2.0);
        const double mag2 = params.k2 * std::pow(std::fabs(e1), a);
        const double w1 = std::pow(rho, r1 + k), w2 = std::pow(rho, r2 + k);
        if (mag1 > 0.0) worst = std::max(worst, std::fabs(scaled.f1 - w1 * base.f1) / (w1 * mag1));
        if (mag2 > 0.0) worst = std::max(worst, std::fabs(scaled.f2 - w2 * base.f2) / (w2 * mag2));
    }
    return worst;
}

double chattering_index(const Trajectory& traj, double window_start) {
    if (traj.size() == 0 || !(window_start < traj.t.back()))
        throw std::invalid_argument("chattering_index: window must start before the last sample");
    double variation = 0.0;
    for (std::size_t i = 1; i < traj.size(); ++i)
        if (traj.t[i - 1] >= window_start) variation += std::fabs(traj.x2[i] - traj.x2[i - 1]);
    return variation / (traj.t.back() - window_start);
}

ScalingFit noise_scaling_fit(std::span<const double> sigmas,
                             std::span<const std::pair<double, double>> errors) {
    if (sigmas.size() != errors.size())
        throw std::invalid_argument("noise_scaling_fit: one error pair per sigma required");
    std::vector<double> distinct(sigmas.begin(), sigmas.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3 || distinct.front() <= 0.0)
        throw std::invalid_argument("noise_scaling_fit: needs >= 3 distinct positive sigmas");
    for (const auto& [a, b] : errors)
        if (!(a > 0.0) || !(b > 0.0))
            throw DegenerateFit("noise_scaling_fit: errors must be positive to take logarithms");

    const auto n = static_cast<double>(sigmas.size());
    double sx = 0, sxx = 0, sy1 = 0, sy2 = 0, sxy1 = 0, sxy2 = 0;
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        const double x = std::log(sigmas[i]);
        const double y1 = std::log(errors[i].first), y2 = std::log(errors[i].second);
        sx += x;
        sxx += x * x;
        sy1 += y1;
        sy2 += y2;
        sxy1 += x * y1;
        sxy2 += x * y2;
    }
    const double denom = n * sxx - sx * sx;
    return {(n * sxy1 - sx * sy1) / denom, (n * sxy2 - sx * sy2) / denom};
}

AnalysisReport steady_state_metrics(const Trajectory& traj, double alpha, double window_start) {
    AnalysisReport r;
    r.window_start = window_start;
    std::size_t count = 0;
    double s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (traj.t[i] < window_start) continue;
        const double a1 = std::fabs(traj.e1[i]), a2 = std::fabs(traj.e2[i]);
        s1 += a1 * a1;
        s2 += a2 * a2;
        r.max_e1 = std::max(r.max_e1, a1);
        r.max_e2 = std::max(r.max_e2, a2);
        r.max_zeta = std::max(r.max_zeta, zeta_norm({traj.e1[i], traj.e2[i]}, alpha));
        ++count;
    }
    if (count == 0) throw std::invalid_argument("steady-state window contains no samples");
    r.rms_e1 = std::sqrt(s1 / static_cast<double>(count));
    r.rms_e2 = std::sqrt(s2 / static_cast<double>(count));
    r.chattering_index = chattering_index(traj, window_start);
    return r;
}

AnalysisReport bound_audit(const Trajectory& traj, const DiffParams& params,
                           const BoundReport& report, double sigma, double window_start) {
    auto r = steady_state_metrics(traj, params.effective_alpha(), window_start);
    const bool noisy = sigma > 0.0;
    const char* name = noisy ? "noisy-zeta-bound" : "zeta-bound";
    const auto status = noisy ? report.noisy_status : report.zeta_status;
    const auto& bound = noisy ? report.noisy_bound : report.zeta_bound;
    if (status == BoundStatus::Available && bound) {
        r.bound_checks.push_back({name, *bound, r.max_zeta, r.max_zeta <= *bound});
    } else {
        r.notes.push_back(std::string(name) + ": " + to_string(status));
    }
    return r;
}

}  // namespace ftdiff
