#include "ftdiff/sim.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "ftdiff/analysis.hpp"
#include "ftdiff/errors.hpp"

namespace ftdiff {

std::size_t SimConfig::step_count() const {
    const double ratio = t_end / dt;
    const double n = std::round(ratio);
    if (std::fabs(ratio - n) > 1e-9 * std::max(1.0, ratio))
        throw ConfigInvalid("/sim/t_end", "must be an integer multiple of dt");
    return static_cast<std::size_t>(n);
}

void validate(const SimConfig& cfg) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ConfigInvalid("/sim/dt", "must be > 0");
    if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end))
        throw ConfigInvalid("/sim/t_end", "must be > 0");
    if (cfg.dt > cfg.t_end) throw ConfigInvalid("/sim/dt", "must not exceed t_end");
    if (cfg.record_stride < 1) throw ConfigInvalid("/sim/record_stride", "must be >= 1");
    if (!(cfg.blowup_ceiling > 0.0)) throw ConfigInvalid("/sim/blowup_ceiling", "must be > 0");
    if (!std::isfinite(cfg.initial_state.x1) || !std::isfinite(cfg.initial_state.x2))
        throw ConfigInvalid("/sim/initial_state", "must be finite");
    (void)cfg.step_count();
}

namespace {

DiffState advance(const DiffState& x, double y, const DiffParams& p, double dt, Method method) {
    if (method == Method::Euler) {
        const auto d = rhs(x, y, p);
        return {x.x1 + dt * d.dx1, x.x2 + dt * d.dx2};
    }
    auto at = [&](const StateDerivative& d, double h) {
        return DiffState{x.x1 + h * d.dx1, x.x2 + h * d.dx2};
    };
    const auto s1 = rhs(x, y, p);
    const auto s2 = rhs(at(s1, dt / 2), y, p);
    const auto s3 = rhs(at(s2, dt / 2), y, p);
    const auto s4 = rhs(at(s3, dt), y, p);
    return {x.x1 + dt / 6 * (s1.dx1 + 2 * s2.dx1 + 2 * s3.dx1 + s4.dx1),
            x.x2 + dt / 6 * (s1.dx2 + 2 * s2.dx2 + 2 * s3.dx2 + s4.dx2)};
}

}  // namespace

Trajectory integrate(const DiffParams& params, const SignalSpec& signal, const NoiseModel& noise,
                     const SimConfig& cfg) {
    validate(params);
    validate(signal);
    validate(noise);
    validate(cfg);

    const std::size_t steps = cfg.step_count();
    const std::size_t samples = steps / cfg.record_stride + 1;
    const bool lyapunov = params.algorithm != Algorithm::SingularPerturbation;

    Trajectory traj;
    traj.sample_period = cfg.dt * static_cast<double>(cfg.record_stride);
    for (auto* col : {&traj.t, &traj.v, &traj.v_dot, &traj.x1, &traj.x2, &traj.e1, &traj.e2})
        col->reserve(samples);
    if (lyapunov) traj.V.reserve(samples);

    DiffState x = cfg.initial_state;
    for (std::size_t n = 0;; ++n) {
        const double t = static_cast<double>(n) * cfg.dt;
        const auto s = eval_signal(signal, t);
        if (!(std::fabs(x.x1) <= cfg.blowup_ceiling && std::fabs(x.x2) <= cfg.blowup_ceiling)) {
            std::ostringstream msg;
            msg << "state left the ceiling " << cfg.blowup_ceiling << " at t = " << t
                << " (x1 = " << x.x1 << ", x2 = " << x.x2 << ")";
            throw NumericalBlowup(msg.str());
        }
        if (n % cfg.record_stride == 0) {
            const auto e = error_state(x, s.v, s.v_dot);
            traj.t.push_back(t);
            traj.v.push_back(s.v);
            traj.v_dot.push_back(s.v_dot);
            traj.x1.push_back(x.x1);
            traj.x2.push_back(x.x2);
            traj.e1.push_back(e.e1);
            traj.e2.push_back(e.e2);
            if (lyapunov) traj.V.push_back(lyapunov_V(e, params));
        }
        if (n == steps) break;
        const double y = s.v + sample_noise(noise, static_cast<std::int64_t>(n), cfg.dt);
        x = advance(x, y, params, cfg.dt, cfg.method);
    }
    return traj;
}

std::optional<double> settle_time(const Trajectory& traj, double tol) {
    std::optional<double> result;
    for (std::size_t i = traj.size(); i-- > 0;) {
        if (std::max(std::fabs(traj.e1[i]), std::fabs(traj.e2[i])) > tol) break;
        result = traj.t[i];
    }
    return result;
}

namespace {

void put(std::ostream& out, double x) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    out.write(buf, r.ptr - buf);
}

}  // namespace

void write_csv(const Trajectory& traj, std::ostream& out) {
    out << "t,v,v_dot,x1,x2,e1,e2,V\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        for (const auto* col : {&traj.t, &traj.v, &traj.v_dot, &traj.x1, &traj.x2, &traj.e1, &traj.e2}) {
            put(out, (*col)[i]);
            out << ',';
        }
        if (traj.has_lyapunov()) put(out, traj.V[i]);
        out << '\n';
    }
}

std::string to_csv(const Trajectory& traj) {
    std::ostringstream out;
    write_csv(traj, out);
    return out.str();
}

const char* to_string(Method m) noexcept {
    return m == Method::Euler ? "euler" : "rk4";
}

}  // namespace ftdiff
