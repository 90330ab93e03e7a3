#pragma once

// Reference signals with exact derivatives, and bounded measurement noise.

#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

namespace ftdiff {

struct Sinusoid {
    double amplitude = 1.0;
    double angular_frequency = 1.0;  // rad/s
    double phase = 0.0;              // rad
    bool operator==(const Sinusoid&) const = default;
};

/// v(t) = c0 + c1 t + c2 t^2 + ...
struct Polynomial {
    std::vector<double> coefficients;
    bool operator==(const Polynomial&) const = default;
};

struct SinusoidSum {
    std::vector<Sinusoid> components;
    bool operator==(const SinusoidSum&) const = default;
};

using SignalSpec = std::variant<Sinusoid, Polynomial, SinusoidSum>;

struct SignalSample {
    double v = 0.0;
    double v_dot = 0.0;
    double v_ddot = 0.0;
};

/// Exact v(t), v'(t), v''(t).
SignalSample eval_signal(const SignalSpec& spec, double t);

/// Bound L2 on |v''(t)| for t in [0, horizon]. Sinusoids ignore the horizon;
/// polynomials of degree >= 3 need a finite one (infinity is returned otherwise).
double lipschitz_bound(const SignalSpec& spec,
                       double horizon = std::numeric_limits<double>::infinity());

enum class NoiseKind { Uniform, BangBang };

struct NoiseModel {
    double sigma = 0.0;  // |delta| <= sigma
    std::uint64_t seed = 0;
    NoiseKind kind = NoiseKind::Uniform;
    double frequency = 10.0;  // Hz, bang-bang only
    bool operator==(const NoiseModel&) const = default;
};

/// Noise sample for integration step `step_index` with step size `dt`.
/// Pure in (model, step_index, dt): uniform samples come from a counter-based
/// hash of (seed, step_index); bang-bang is a +/-sigma square wave in time.
double sample_noise(const NoiseModel& model, std::int64_t step_index, double dt);

void validate(const SignalSpec& spec);
void validate(const NoiseModel& model);

}  // namespace ftdiff
