#include <array>
#include <cctype>
#include <fstream>
#include <set>

#include "ftdiff/errors.hpp"
#include "ftdiff/scenario.hpp"

namespace ftdiff {
namespace {

using nlohmann::json;

// Reads one JSON object and rejects keys nobody asked for.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigInvalid(path_.empty() ? "/" : path_, "expected an object");
    }

    /// Throws for the first key that was never read.
    void finish() const {
        for (const auto& [key, _] : j_.items())
            if (!seen_.count(key)) throw ConfigInvalid(path_ + "/" + key, "unknown key");
    }

    void skip(const std::string& key) { seen_.insert(key); }

    bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }
    std::string child(const std::string& key) const { return path_ + "/" + key; }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key)) throw ConfigInvalid(child(key), "missing required key");
        return j_.at(key);
    }

    double number(const std::string& key) {
        const auto& v = raw(key);
        if (!v.is_number()) throw ConfigInvalid(child(key), "expected a number");
        return v.get<double>();
    }
    double number(const std::string& key, double fallback) {
        seen_.insert(key);
        return has(key) ? number(key) : fallback;
    }
    std::optional<double> optional_number(const std::string& key) {
        seen_.insert(key);
        if (!has(key)) return std::nullopt;
        return number(key);
    }
    std::string string(const std::string& key) {
        const auto& v = raw(key);
        if (!v.is_string()) throw ConfigInvalid(child(key), "expected a string");
        return v.get<std::string>();
    }
    std::string string(const std::string& key, const std::string& fallback) {
        seen_.insert(key);
        return has(key) ? string(key) : fallback;
    }
    bool boolean(const std::string& key, bool fallback) {
        seen_.insert(key);
        if (!has(key)) return fallback;
        const auto& v = j_.at(key);
        if (!v.is_boolean()) throw ConfigInvalid(child(key), "expected a boolean");
        return v.get<bool>();
    }
    std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
        seen_.insert(key);
        if (!has(key)) return fallback;
        const auto& v = j_.at(key);
        if (!v.is_number_unsigned()) throw ConfigInvalid(child(key), "expected a non-negative integer");
        return v.get<std::uint64_t>();
    }
    std::vector<double> numbers(const std::string& key) {
        const auto& v = raw(key);
        if (!v.is_array()) throw ConfigInvalid(child(key), "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number())
                throw ConfigInvalid(child(key) + "/" + std::to_string(i), "expected a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

template <typename Enum, std::size_t N>
Enum parse_enum(const std::string& value, const std::array<std::pair<const char*, Enum>, N>& table,
                const std::string& path) {
    for (const auto& [name, e] : table)
        if (value == name) return e;
    std::string allowed;
    for (const auto& [name, _] : table) allowed += (allowed.empty() ? "" : ", ") + std::string(name);
    throw ConfigInvalid(path, "unknown value '" + value + "' (expected one of: " + allowed + ")");
}

constexpr std::array<std::pair<const char*, Algorithm>, 3> kAlgorithms{{
    {"continuous-ftd", Algorithm::ContinuousFtd},
    {"levant", Algorithm::Levant},
    {"singular-perturbation", Algorithm::SingularPerturbation},
}};
constexpr std::array<std::pair<const char*, NoiseKind>, 2> kNoiseKinds{{
    {"uniform", NoiseKind::Uniform},
    {"bang-bang", NoiseKind::BangBang},
}};
constexpr std::array<std::pair<const char*, Method>, 2> kMethods{{
    {"euler", Method::Euler},
    {"rk4", Method::Rk4},
}};

const char* noise_kind_name(NoiseKind k) { return k == NoiseKind::Uniform ? "uniform" : "bang-bang"; }

json sinusoid_json(const Sinusoid& s) {
    return {{"amplitude", s.amplitude}, {"angular_frequency", s.angular_frequency}, {"phase", s.phase}};
}

Sinusoid read_sinusoid(ObjectReader& r) {
    Sinusoid s;
    s.amplitude = r.number("amplitude");
    s.angular_frequency = r.number("angular_frequency", 1.0);
    s.phase = r.number("phase", 0.0);
    return s;
}

json signal_json(const SignalSpec& spec) {
    if (const auto* s = std::get_if<Sinusoid>(&spec)) {
        auto j = sinusoid_json(*s);
        j["kind"] = "sinusoid";
        return j;
    }
    if (const auto* p = std::get_if<Polynomial>(&spec))
        return {{"kind", "polynomial"}, {"coefficients", p->coefficients}};
    json comps = json::array();
    for (const auto& c : std::get<SinusoidSum>(spec).components) comps.push_back(sinusoid_json(c));
    return {{"kind", "sum-of-sinusoids"}, {"components", comps}};
}

SignalSpec read_signal(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    const auto kind = r.string("kind");
    if (kind == "sinusoid") {
        auto s = read_sinusoid(r);
        r.finish();
        return s;
    }
    if (kind == "polynomial") {
        Polynomial p{r.numbers("coefficients")};
        r.finish();
        return p;
    }
    if (kind == "sum-of-sinusoids") {
        const auto& arr = r.raw("components");
        if (!arr.is_array()) throw ConfigInvalid(r.child("components"), "expected an array");
        SinusoidSum sum;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            ObjectReader c(arr[i], r.child("components") + "/" + std::to_string(i));
            sum.components.push_back(read_sinusoid(c));
            c.finish();
        }
        r.finish();
        return sum;
    }
    throw ConfigInvalid(r.child("kind"), "unknown signal kind '" + kind +
                                             "' (expected sinusoid, polynomial, sum-of-sinusoids)");
}

}  // namespace

double ScenarioConfig::window_start() const { return analysis.window_start.value_or(sim.t_end / 2.0); }

nlohmann::json to_json(const ScenarioConfig& cfg) {
    const auto& d = cfg.differentiator;
    json analysis = {{"bound_checks", cfg.analysis.bound_checks},
                     {"settle_tolerance", cfg.analysis.settle_tolerance}};
    analysis["window_start"] = cfg.analysis.window_start ? json(*cfg.analysis.window_start) : json(nullptr);
    return {
        {"name", cfg.name},
        {"description", cfg.description},
        {"differentiator",
         {{"algorithm", to_string(d.algorithm)}, {"k1", d.k1}, {"k2", d.k2}, {"alpha", d.alpha}, {"epsilon", d.epsilon}}},
        {"signal", signal_json(cfg.signal)},
        {"noise",
         {{"kind", noise_kind_name(cfg.noise.kind)},
          {"sigma", cfg.noise.sigma},
          {"seed", cfg.noise.seed},
          {"frequency", cfg.noise.frequency}}},
        {"sim",
         {{"dt", cfg.sim.dt},
          {"t_end", cfg.sim.t_end},
          {"method", to_string(cfg.sim.method)},
          {"initial_state", {cfg.sim.initial_state.x1, cfg.sim.initial_state.x2}},
          {"record_stride", cfg.sim.record_stride},
          {"blowup_ceiling", cfg.sim.blowup_ceiling}}},
        {"analysis", analysis},
        {"output_dir", cfg.output_dir.string()},
    };
}

ScenarioConfig scenario_from_json(const nlohmann::json& j) {
    ScenarioConfig cfg;
    ObjectReader root(j, "");
    cfg.name = root.string("name");
    cfg.description = root.string("description", "");
    cfg.output_dir = root.string("output_dir", "out");

    {
        ObjectReader d(root.raw("differentiator"), "/differentiator");
        cfg.differentiator.algorithm = parse_enum(d.string("algorithm"), kAlgorithms, d.child("algorithm"));
        cfg.differentiator.k1 = d.number("k1", cfg.differentiator.k1);
        cfg.differentiator.k2 = d.number("k2", cfg.differentiator.k2);
        cfg.differentiator.alpha = d.number("alpha", cfg.differentiator.alpha);
        cfg.differentiator.epsilon = d.number("epsilon", cfg.differentiator.epsilon);
        d.finish();
    }
    cfg.signal = read_signal(root.raw("signal"), "/signal");

    if (root.has("noise")) {
        ObjectReader n(root.raw("noise"), "/noise");
        cfg.noise.kind = parse_enum(n.string("kind", "uniform"), kNoiseKinds, n.child("kind"));
        cfg.noise.sigma = n.number("sigma", 0.0);
        cfg.noise.seed = n.unsigned_integer("seed", 0);
        cfg.noise.frequency = n.number("frequency", cfg.noise.frequency);
        n.finish();
    } else {
        root.skip("noise");
    }
    if (root.has("sim")) {
        ObjectReader s(root.raw("sim"), "/sim");
        cfg.sim.dt = s.number("dt", cfg.sim.dt);
        cfg.sim.t_end = s.number("t_end", cfg.sim.t_end);
        cfg.sim.method = parse_enum(s.string("method", "euler"), kMethods, s.child("method"));
        if (s.has("initial_state")) {
            const auto x0 = s.numbers("initial_state");
            if (x0.size() != 2) throw ConfigInvalid(s.child("initial_state"), "expected [x1, x2]");
            cfg.sim.initial_state = {x0[0], x0[1]};
        } else {
            s.skip("initial_state");
        }
        cfg.sim.record_stride = s.unsigned_integer("record_stride", 1);
        cfg.sim.blowup_ceiling = s.number("blowup_ceiling", cfg.sim.blowup_ceiling);
        s.finish();
    } else {
        root.skip("sim");
    }
    if (root.has("analysis")) {
        ObjectReader a(root.raw("analysis"), "/analysis");
        cfg.analysis.window_start = a.optional_number("window_start");
        cfg.analysis.bound_checks = a.boolean("bound_checks", true);
        cfg.analysis.settle_tolerance = a.number("settle_tolerance", cfg.analysis.settle_tolerance);
        a.finish();
    } else {
        root.skip("analysis");
    }
    root.finish();
    validate(cfg);
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigInvalid("", path.string() + ": " + e.what());
    }
    return scenario_from_json(j);
}

void validate(const ScenarioConfig& cfg) {
    if (cfg.name.empty()) throw ConfigInvalid("/name", "must not be empty");
    for (char c : cfg.name) {
        const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.' ||
                        c == '=' || c == '+';
        if (!ok) throw ConfigInvalid("/name", "only letters, digits, '-', '_', '.', '=' and '+' are allowed");
    }
    if (cfg.name == "." || cfg.name == "..") throw ConfigInvalid("/name", "not a valid file name");
    validate(cfg.differentiator);
    validate(cfg.signal);
    validate(cfg.noise);
    validate(cfg.sim);
    if (cfg.analysis.window_start && !(*cfg.analysis.window_start >= 0.0 &&
                                       *cfg.analysis.window_start < cfg.sim.t_end))
        throw ConfigInvalid("/analysis/window_start", "must lie in [0, t_end)");
    if (!(cfg.analysis.settle_tolerance > 0.0))
        throw ConfigInvalid("/analysis/settle_tolerance", "must be > 0");
}

}  // namespace ftdiff
