// Command-line runner for differentiator scenarios.

#include <cstdio>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "ftdiff/errors.hpp"
#include "ftdiff/scenario.hpp"

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kConfig = 2, kBlowup = 3, kIo = 4 };

void print_run(const ftdiff::RunReport& r) {
    const auto& a = r.result.analysis;
    std::cout << r.result.config.name << ": wrote " << r.trajectory_csv.string() << " and "
              << r.report_json.string() << "\n";
    std::cout << "  steady window from t = " << a.window_start << " s: max|e1| = " << a.max_e1
              << ", max|e2| = " << a.max_e2 << ", chattering index = " << a.chattering_index << "\n";
    if (r.result.settle_time)
        std::cout << "  settle time = " << *r.result.settle_time << " s\n";
    else
        std::cout << "  never settled within tolerance\n";
    for (const auto& c : a.bound_checks)
        std::cout << "  " << c.name << ": observed " << c.observed_value << " vs bound " << c.bound_value
                  << (c.pass ? "  PASS" : "  FAIL") << "\n";
    for (const auto& note : a.notes) std::cout << "  no bound check (" << note << ")\n";
}

void print_rows(const std::vector<ftdiff::ComparisonRow>& rows, const std::string& lead = "name",
                const std::vector<double>* values = nullptr) {
    std::cout << std::left << std::setw(28) << lead << std::setw(24) << "algorithm" << std::right
              << std::setw(14) << "rms_e1" << std::setw(14) << "rms_e2" << std::setw(14) << "max_e1"
              << std::setw(14) << "max_e2" << std::setw(14) << "chattering" << std::setw(12) << "settle"
              << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        std::ostringstream label;
        if (values) label << (*values)[i]; else label << r.name;
        std::cout << std::left << std::setw(28) << label.str() << std::setw(24) << ftdiff::to_string(r.algorithm)
                  << std::right << std::setprecision(6) << std::setw(14) << r.rms_e1 << std::setw(14)
                  << r.rms_e2 << std::setw(14) << r.max_e1 << std::setw(14) << r.max_e2 << std::setw(14)
                  << r.chattering_index << std::setw(12);
        if (r.settle_time) std::cout << *r.settle_time; else std::cout << "-";
        std::cout << "\n";
    }
}

void write_json(const std::string& path, const nlohmann::json& j) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw ftdiff::IoFailure("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
    if (!out) throw ftdiff::IoFailure("failed writing " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-time differentiator toolkit: simulate, analyse and compare differentiators"};
    app.require_subcommand(1);

    std::string config_path, preset_name, output_dir, json_path, param;
    std::vector<std::string> config_paths;
    std::vector<double> values;
    bool print_config = false;

    auto* run_cmd = app.add_subcommand("run", "Run one scenario config");
    run_cmd->add_option("config", config_path, "Scenario JSON file")->required();
    run_cmd->add_option("-o,--output-dir", output_dir, "Override the configured output directory");

    auto* preset_cmd = app.add_subcommand("preset", "Run a built-in preset");
    preset_cmd->add_option("name", preset_name, "Preset name (see list-presets)")->required();
    preset_cmd->add_option("-o,--output-dir", output_dir, "Override the output directory");
    preset_cmd->add_flag("--print-config", print_config, "Print the preset config as JSON and exit");

    auto* compare_cmd = app.add_subcommand("compare", "Compare scenarios sharing signal and noise");
    compare_cmd->add_option("configs", config_paths, "Scenario JSON files")->required()->expected(2, -1);
    compare_cmd->add_option("--json", json_path, "Also write the table as JSON");

    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter of a scenario");
    sweep_cmd->add_option("config", config_path, "Scenario JSON file")->required();
    sweep_cmd->add_option("--param", param, "sigma, k1, k2, alpha or dt")->required();
    sweep_cmd->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');
    sweep_cmd->add_option("--json", json_path, "Also write the table as JSON");

    auto* list_cmd = app.add_subcommand("list-presets", "List built-in presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list_cmd) {
            for (const auto& p : ftdiff::list_presets())
                std::cout << std::left << std::setw(10) << p.name << "  " << p.summary << "\n";
        } else if (*run_cmd || *preset_cmd) {
            auto cfg = *run_cmd ? ftdiff::load_scenario(config_path) : ftdiff::preset(preset_name);
            if (print_config) {
                std::cout << ftdiff::to_json(cfg).dump(2) << "\n";
                return kOk;
            }
            if (!output_dir.empty()) cfg.output_dir = output_dir;
            print_run(ftdiff::run(cfg));
        } else if (*compare_cmd) {
            std::vector<ftdiff::ScenarioConfig> cfgs;
            for (const auto& p : config_paths) cfgs.push_back(ftdiff::load_scenario(p));
            const auto rows = ftdiff::compare(cfgs);
            print_rows(rows);
            write_json(json_path, ftdiff::to_json(rows));
        } else if (*sweep_cmd) {
            const auto base = ftdiff::load_scenario(config_path);
            const auto result = ftdiff::sweep(base, ftdiff::parse_sweep_param(param), values);
            std::vector<ftdiff::ComparisonRow> rows;
            for (const auto& r : result.rows) rows.push_back(r.metrics);
            print_rows(rows, param, &values);
            if (result.noise_fit)
                std::cout << "log-log slopes: e1 " << result.noise_fit->slope_e1 << ", e2 "
                          << result.noise_fit->slope_e2 << "\n";
            write_json(json_path, ftdiff::to_json(result));
        }
    } catch (const ftdiff::ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const ftdiff::MismatchedScenario& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const ftdiff::NumericalBlowup& e) {
        std::cerr << "numerical blowup: " << e.what() << "\n";
        return kBlowup;
    } catch (const ftdiff::IoFailure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kOk;
}
