#include "ftdiff/errors.hpp"
#include "ftdiff/scenario.hpp"

namespace ftdiff {
namespace {

constexpr const char* kDefaultsNote =
    " Step size, horizon, initial state and noise level are toolkit defaults, not published values.";

ScenarioConfig base(std::string name, std::string summary, DiffParams d, SignalSpec signal) {
    ScenarioConfig cfg;
    cfg.name = std::move(name);
    cfg.description = std::move(summary) + kDefaultsNote;
    cfg.differentiator = d;
    cfg.signal = std::move(signal);
    cfg.sim.dt = 1e-4;
    cfg.sim.t_end = 10.0;
    cfg.sim.method = Method::Euler;
    return cfg;
}

DiffParams continuous(double k1, double k2, double alpha) {
    return {Algorithm::ContinuousFtd, k1, k2, alpha, 0.1};
}
DiffParams levant(double k1, double k2) { return {Algorithm::Levant, k1, k2, 0.0, 0.1}; }

const SignalSpec kSine = Sinusoid{2.0, 1.0, 0.0};
const SignalSpec kZero = Polynomial{{0.0}};
const NoiseModel kNoisy{0.01, 1, NoiseKind::Uniform, 10.0};

std::vector<ScenarioConfig> all_presets() {
    std::vector<ScenarioConfig> out;

    auto fig1 = base("fig1", "Levant error system with k1=6, k2=9 from (1, 0); chatters near the origin.",
                     levant(6, 9), kZero);
    fig1.sim.initial_state = {1.0, 0.0};
    out.push_back(fig1);

    auto fig2 = base("fig2", "Continuous system with k1=6, k2=9, alpha=0.2 from (1, 0); smooth finite-time settling.",
                     continuous(6, 9, 0.2), kZero);
    fig2.sim.initial_state = {1.0, 0.0};
    out.push_back(fig2);

    out.push_back(base("fig3-4", "Levant differentiator on 2 sin t without noise, half-power gain 6, sign gain 30.",
                       levant(6, 30), kSine));
    out.push_back(base("fig5-6", "Continuous differentiator on 2 sin t without noise, k1=6, k2=30, alpha=0.2.",
                       continuous(6, 30, 0.2), kSine));

    auto fig78 = base("fig7-8", "Levant differentiator on noisy 2 sin t, k1=2, k2=25.", levant(2, 25), kSine);
    fig78.noise = kNoisy;
    out.push_back(fig78);

    auto fig910 = base("fig9-10", "Continuous differentiator on noisy 2 sin t, k1=2, k2=25, alpha=0.6.",
                       continuous(2, 25, 0.6), kSine);
    fig910.noise = kNoisy;
    out.push_back(fig910);

    DiffParams spt{Algorithm::SingularPerturbation, 1.0, 1.0, 0.0, 0.1};
    auto fig1112 = base("fig11-12", "Singular-perturbation differentiator on noisy 2 sin t, epsilon=0.1.",
                        spt, kSine);
    fig1112.noise = kNoisy;
    out.push_back(fig1112);

    for (auto& cfg : out) cfg.output_dir = "out";
    return out;
}

}  // namespace

std::vector<PresetInfo> list_presets() {
    std::vector<PresetInfo> info;
    for (const auto& cfg : all_presets()) info.push_back({cfg.name, cfg.description});
    return info;
}

ScenarioConfig preset(const std::string& name) {
    for (auto& cfg : all_presets())
        if (cfg.name == name) return cfg;
    throw ConfigInvalid("/name", "unknown preset '" + name + "'");
}

}  // namespace ftdiff
