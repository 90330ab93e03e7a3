#include "ftdiff/scenario.hpp"

#include <chrono>
#include <fstream>
#include <future>
#include <sstream>

#include "ftdiff/errors.hpp"

namespace ftdiff {
namespace {

using nlohmann::json;

json optional_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

ComparisonRow row_of(const ScenarioResult& r) {
    return {r.config.name,
            r.config.differentiator.algorithm,
            r.analysis.rms_e1,
            r.analysis.rms_e2,
            r.analysis.max_e1,
            r.analysis.max_e2,
            r.analysis.chattering_index,
            r.settle_time};
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw IoFailure("failed writing " + path.string());
}

}  // namespace

ScenarioResult evaluate(const ScenarioConfig& cfg) {
    validate(cfg);
    ScenarioResult r;
    r.config = cfg;
    const auto& p = cfg.differentiator;
    r.trajectory = integrate(p, cfg.signal, cfg.noise, cfg.sim);

    const double L2 = lipschitz_bound(cfg.signal, cfg.sim.t_end);
    r.bounds = design_check(p, L2, cfg.noise.sigma);

    const double window = cfg.window_start();
    r.analysis = cfg.analysis.bound_checks
                     ? bound_audit(r.trajectory, p, r.bounds, cfg.noise.sigma, window)
                     : steady_state_metrics(r.trajectory, p.effective_alpha(), window);

    // The decay inequality only holds for the unforced, noiseless continuous system.
    if (p.algorithm == Algorithm::ContinuousFtd && p.alpha > 0.0 && cfg.noise.sigma == 0.0 && L2 == 0.0) {
        const auto rate = finite_time_rate(p);
        r.analysis.lyapunov_violations = 1.0 - lyapunov_decay_check(r.trajectory, p, rate.c, rate.theta);
    }
    r.settle_time = settle_time(r.trajectory, cfg.analysis.settle_tolerance);
    return r;
}

RunReport run(const ScenarioConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.result = evaluate(cfg);

    try {
        std::filesystem::create_directories(cfg.output_dir);
    } catch (const std::filesystem::filesystem_error& e) {
        throw IoFailure(e.what());
    }
    report.trajectory_csv = cfg.output_dir / (cfg.name + ".csv");
    report.report_json = cfg.output_dir / (cfg.name + ".report.json");
    write_file(report.trajectory_csv, to_csv(report.result.trajectory));
    report.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_file(report.report_json, report_json(report).dump(2) + "\n");
    return report;
}

nlohmann::json to_json(const BoundReport& r) {
    return {{"L2", r.L2},
            {"sigma", r.sigma},
            {"lambda_min_Q", r.lambda_min_Q},
            {"l", r.l},
            {"l1", r.l1},
            {"l2", r.l2},
            {"psi1", r.psi1},
            {"psi2", r.psi2},
            {"feasible", r.feasible},
            {"zeta_status", to_string(r.zeta_status)},
            {"zeta_bound", optional_json(r.zeta_bound)},
            {"noisy_status", to_string(r.noisy_status)},
            {"noisy_bound", optional_json(r.noisy_bound)}};
}

nlohmann::json to_json(const AnalysisReport& r) {
    json checks = json::array();
    for (const auto& c : r.bound_checks)
        checks.push_back({{"bound_name", c.name},
                          {"bound_value", c.bound_value},
                          {"observed_value", c.observed_value},
                          {"pass", c.pass}});
    return {{"window_start", r.window_start},
            {"rms_e1", r.rms_e1},
            {"rms_e2", r.rms_e2},
            {"max_e1", r.max_e1},
            {"max_e2", r.max_e2},
            {"max_zeta", r.max_zeta},
            {"chattering_index", r.chattering_index},
            {"lyapunov_violations", optional_json(r.lyapunov_violations)},
            {"bound_checks", checks},
            {"notes", r.notes}};
}

nlohmann::json report_json(const RunReport& r) {
    return {{"config", to_json(r.result.config)},
            {"bounds", to_json(r.result.bounds)},
            {"analysis", to_json(r.result.analysis)},
            {"settle_time", optional_json(r.result.settle_time)},
            {"files", {{"trajectory", r.trajectory_csv.string()}, {"report", r.report_json.string()}}},
            {"wall_clock_seconds", r.wall_clock_seconds}};
}

std::vector<ComparisonRow> compare(const std::vector<ScenarioConfig>& configs) {
    if (configs.size() < 2) throw std::invalid_argument("compare needs at least two configs");
    for (const auto& cfg : configs) {
        if (!(cfg.signal == configs.front().signal))
            throw MismatchedScenario("config '" + cfg.name + "' uses a different signal than '" +
                                     configs.front().name + "'");
        if (!(cfg.noise == configs.front().noise))
            throw MismatchedScenario("config '" + cfg.name + "' uses a different noise model than '" +
                                     configs.front().name + "'");
    }
    std::vector<std::future<ScenarioResult>> jobs;
    for (const auto& cfg : configs) jobs.push_back(std::async(std::launch::async, evaluate, cfg));
    std::vector<ComparisonRow> rows;
    for (auto& job : jobs) rows.push_back(row_of(job.get()));
    return rows;
}

SweepParam parse_sweep_param(const std::string& name) {
    if (name == "sigma") return SweepParam::Sigma;
    if (name == "k1") return SweepParam::K1;
    if (name == "k2") return SweepParam::K2;
    if (name == "alpha") return SweepParam::Alpha;
    if (name == "dt") return SweepParam::Dt;
    throw ConfigInvalid("--param", "unknown sweep parameter '" + name + "' (expected sigma, k1, k2, alpha, dt)");
}

const char* to_string(SweepParam p) noexcept {
    switch (p) {
        case SweepParam::Sigma: return "sigma";
        case SweepParam::K1: return "k1";
        case SweepParam::K2: return "k2";
        case SweepParam::Alpha: return "alpha";
        case SweepParam::Dt: return "dt";
    }
    return "?";
}

SweepResult sweep(const ScenarioConfig& base, SweepParam parameter, const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    std::vector<ScenarioConfig> configs;
    for (double value : values) {
        auto cfg = base;
        switch (parameter) {
            case SweepParam::Sigma: cfg.noise.sigma = value; break;
            case SweepParam::K1: cfg.differentiator.k1 = value; break;
            case SweepParam::K2: cfg.differentiator.k2 = value; break;
            case SweepParam::Alpha: cfg.differentiator.alpha = value; break;
            case SweepParam::Dt: cfg.sim.dt = value; break;
        }
        std::ostringstream name;
        name << base.name << '-' << to_string(parameter) << '=' << value;
        cfg.name = name.str();
        validate(cfg);
        configs.push_back(std::move(cfg));
    }

    std::vector<std::future<ScenarioResult>> jobs;
    for (const auto& cfg : configs) jobs.push_back(std::async(std::launch::async, evaluate, cfg));

    SweepResult out;
    out.parameter = parameter;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto r = jobs[i].get();
        const auto last = r.trajectory.size() - 1;
        out.rows.push_back({values[i], row_of(r), {r.trajectory.x1[last], r.trajectory.x2[last]}});
    }
    if (parameter == SweepParam::Sigma) {
        std::vector<std::pair<double, double>> errors;
        for (const auto& row : out.rows) errors.emplace_back(row.metrics.max_e1, row.metrics.max_e2);
        try {
            out.noise_fit = noise_scaling_fit(values, errors);
        } catch (const std::invalid_argument&) {
        } catch (const DegenerateFit&) {
        }
    }
    return out;
}

nlohmann::json to_json(const std::vector<ComparisonRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"name", r.name},
                       {"algorithm", to_string(r.algorithm)},
                       {"rms_e1", r.rms_e1},
                       {"rms_e2", r.rms_e2},
                       {"max_e1", r.max_e1},
                       {"max_e2", r.max_e2},
                       {"chattering_index", r.chattering_index},
                       {"settle_time", optional_json(r.settle_time)}});
    return arr;
}

nlohmann::json to_json(const SweepResult& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        auto j = to_json(std::vector<ComparisonRow>{row.metrics}).at(0);
        j["value"] = row.value;
        j["terminal_state"] = {row.terminal_state.x1, row.terminal_state.x2};
        rows.push_back(j);
    }
    json fit = nullptr;
    if (r.noise_fit) fit = {{"slope_e1", r.noise_fit->slope_e1}, {"slope_e2", r.noise_fit->slope_e2}};
    return {{"parameter", to_string(r.parameter)}, {"rows", rows}, {"noise_fit", fit}};
}

}  // namespace ftdiff
