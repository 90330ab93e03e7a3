#pragma once

// Fixed-step integration of a differentiator driven by a sampled signal.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ftdiff/diffcore.hpp"
#include "ftdiff/signals.hpp"

namespace ftdiff {

enum class Method { Euler, Rk4 };

struct SimConfig {
    double dt = 1e-4;
    double t_end = 10.0;
    Method method = Method::Euler;
    DiffState initial_state{};
    std::size_t record_stride = 1;
    double blowup_ceiling = 1e9;
    bool operator==(const SimConfig&) const = default;

    /// Number of integration steps; t_end must be an integer multiple of dt.
    std::size_t step_count() const;
};

/// Uniformly sampled columns. `V` is empty when the algorithm has no
/// Lyapunov function attached (singular perturbation).
struct Trajectory {
    double sample_period = 0.0;
    std::vector<double> t, v, v_dot, x1, x2, e1, e2, V;

    std::size_t size() const noexcept { return t.size(); }
    bool has_lyapunov() const noexcept { return !V.empty(); }
};

/// Measurement at step n is v(t_n) + delta_n, held over the whole step
/// (including the rk4 stages). Throws NumericalBlowup when a state leaves
/// [-ceiling, ceiling] or becomes non-finite.
Trajectory integrate(const DiffParams& params, const SignalSpec& signal,
                     const NoiseModel& noise, const SimConfig& cfg);

/// Smallest recorded t* with max(|e1|, |e2|) <= tol on every sample from t*
/// onward; nullopt when even the last sample is outside the band.
std::optional<double> settle_time(const Trajectory& traj, double tol);

/// Header `t,v,v_dot,x1,x2,e1,e2,V`, 17 significant digits.
void write_csv(const Trajectory& traj, std::ostream& out);
std::string to_csv(const Trajectory& traj);

void validate(const SimConfig& cfg);
const char* to_string(Method m) noexcept;

}  // namespace ftdiff
