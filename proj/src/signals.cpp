#include "ftdiff/signals.hpp"

#include <cmath>

#include "ftdiff/errors.hpp"

namespace ftdiff {
namespace {

SignalSample eval_one(const Sinusoid& s, double t) {
    const double arg = s.angular_frequency * t + s.phase;
    const double w = s.angular_frequency;
    return {s.amplitude * std::sin(arg), s.amplitude * w * std::cos(arg),
            -s.amplitude * w * w * std::sin(arg)};
}

SignalSample eval_one(const Polynomial& p, double t) {
    // Horner on value and both derivatives.
    SignalSample out;
    for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
        out.v_ddot = out.v_ddot * t + 2.0 * out.v_dot;
        out.v_dot = out.v_dot * t + out.v;
        out.v = out.v * t + *it;
    }
    return out;
}

SignalSample eval_one(const SinusoidSum& s, double t) {
    SignalSample out;
    for (const auto& c : s.components) {
        const auto part = eval_one(c, t);
        out.v += part.v;
        out.v_dot += part.v_dot;
        out.v_ddot += part.v_ddot;
    }
    return out;
}

double bound_one(const Sinusoid& s, double) {
    return std::fabs(s.amplitude) * s.angular_frequency * s.angular_frequency;
}

double bound_one(const SinusoidSum& s, double) {
    double sum = 0.0;
    for (const auto& c : s.components) sum += bound_one(c, 0.0);
    return sum;
}

double bound_one(const Polynomial& p, double horizon) {
    double sum = 0.0;
    for (std::size_t k = 2; k < p.coefficients.size(); ++k) {
        const double c = p.coefficients[k];
        if (c == 0.0) continue;
        const double kk = static_cast<double>(k);
        sum += kk * (kk - 1.0) * std::fabs(c) * (k == 2 ? 1.0 : std::pow(horizon, kk - 2.0));
    }
    return sum;
}

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

SignalSample eval_signal(const SignalSpec& spec, double t) {
    return std::visit([t](const auto& s) { return eval_one(s, t); }, spec);
}

double lipschitz_bound(const SignalSpec& spec, double horizon) {
    return std::visit([horizon](const auto& s) { return bound_one(s, horizon); }, spec);
}

double sample_noise(const NoiseModel& model, std::int64_t step_index, double dt) {
    if (model.sigma == 0.0) return 0.0;
    switch (model.kind) {
        case NoiseKind::Uniform: {
            const auto bits = mix64(mix64(model.seed) ^ static_cast<std::uint64_t>(step_index));
            // 53 random mantissa bits -> [0, 1)
            const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
            return model.sigma * (2.0 * u - 1.0);
        }
        case NoiseKind::BangBang: {
            const double t = static_cast<double>(step_index) * dt;
            const auto half_periods = static_cast<std::int64_t>(std::floor(2.0 * model.frequency * t));
            return half_periods % 2 == 0 ? model.sigma : -model.sigma;
        }
    }
    return 0.0;
}

void validate(const SignalSpec& spec) {
    auto finite = [](double x) { return std::isfinite(x); };
    auto check_sin = [&](const Sinusoid& s, const std::string& path) {
        if (!finite(s.amplitude)) throw ConfigInvalid(path + "/amplitude", "must be finite");
        if (!finite(s.angular_frequency))
            throw ConfigInvalid(path + "/angular_frequency", "must be finite");
        if (!finite(s.phase)) throw ConfigInvalid(path + "/phase", "must be finite");
    };
    if (const auto* s = std::get_if<Sinusoid>(&spec)) {
        check_sin(*s, "/signal");
    } else if (const auto* p = std::get_if<Polynomial>(&spec)) {
        if (p->coefficients.empty())
            throw ConfigInvalid("/signal/coefficients", "must not be empty");
        for (double c : p->coefficients)
            if (!finite(c)) throw ConfigInvalid("/signal/coefficients", "must be finite");
    } else {
        const auto& sum = std::get<SinusoidSum>(spec);
        if (sum.components.empty())
            throw ConfigInvalid("/signal/components", "must not be empty");
        for (std::size_t i = 0; i < sum.components.size(); ++i)
            check_sin(sum.components[i], "/signal/components/" + std::to_string(i));
    }
}

void validate(const NoiseModel& model) {
    if (!(model.sigma >= 0.0) || !std::isfinite(model.sigma))
        throw ConfigInvalid("/noise/sigma", "must be finite and >= 0");
    if (model.kind == NoiseKind::BangBang && !(model.frequency > 0.0))
        throw ConfigInvalid("/noise/frequency", "must be > 0 for bang-bang noise");
}

}  // namespace ftdiff
