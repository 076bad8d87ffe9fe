// Command line front end: scenario runs, classification and stability
// reports, temperature sweeps, config validation.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qthydro/config.hpp"
#include "qthydro/csv.hpp"
#include "qthydro/errors.hpp"
#include "qthydro/scenario.hpp"

namespace fs = std::filesystem;
using namespace qthydro;

namespace {

constexpr const char* kConfigPathEnv = "QTHYDRO_CONFIG_PATH";
constexpr const char* kDefaultConfigName = "qthydro.cfg";

/// Resolves a config file against the working directory and the
/// colon-separated QTHYDRO_CONFIG_PATH search path. An empty name searches
/// for qthydro.cfg and falls back to built-in defaults when absent.
std::optional<fs::path> resolve_config_path(const std::string& name) {
    const std::string wanted = name.empty() ? kDefaultConfigName : name;
    if (fs::exists(wanted)) return fs::path(wanted);
    if (!name.empty() && fs::path(name).is_absolute()) return std::nullopt;
    if (const char* env = std::getenv(kConfigPathEnv)) {
        std::istringstream ss(env);
        std::string dir;
        while (std::getline(ss, dir, ':')) {
            if (dir.empty()) continue;
            const fs::path candidate = fs::path(dir) / wanted;
            if (fs::exists(candidate)) return candidate;
        }
    }
    return std::nullopt;
}

struct CommonOptions {
    std::string config_file;
    std::vector<std::string> overrides;
    std::string output_dir;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("-c,--config", opts.config_file,
                    "config file (searched in $" + std::string(kConfigPathEnv) + ")");
    cmd->add_option("--set", opts.overrides, "override a config key, e.g. --set init.epsilon=0.2")
        ->type_name("KEY=VALUE");
    cmd->add_option("-o,--output-dir", opts.output_dir, "output directory (overrides config)");
}

ScenarioConfig build_config(const CommonOptions& opts) {
    ScenarioConfig cfg;
    const std::optional<fs::path> path = resolve_config_path(opts.config_file);
    if (path) {
        cfg = load_config(path->string());
    } else if (!opts.config_file.empty()) {
        throw ConfigError("config file '" + opts.config_file + "' not found");
    }
    for (const std::string& kv : opts.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects KEY=VALUE, got '" + kv + "'");
        apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!opts.output_dir.empty()) cfg.output_dir = opts.output_dir;
    cfg.validate();
    return cfg;
}

int cmd_relax(const CommonOptions& opts) {
    const ScenarioConfig cfg = build_config(opts);
    const RelaxationResult res = run_relaxation(cfg);
    std::cout << "status: " << to_string(res.report.status)
              << "  steps: " << res.report.steps_taken
              << "  snapshots: " << res.report.snapshots.size() << '\n';
    std::cout << "artifacts in " << res.output_dir.string() << '\n';
    if (res.report.status == RunStatus::Completed) {
        try {
            const TwoHumpReport th = report_two_hump(res.report);
            std::cout << "two-hump drift response at t = tau: "
                      << (th.two_hump ? "yes" : "no") << '\n';
        } catch (const InsufficientAmplitudeError&) {
            std::cout << "two-hump drift response at t = tau: no signal\n";
        }
    }
    return res.exit_code;
}

int cmd_classify(const CommonOptions& opts) {
    const ScenarioConfig cfg = build_config(opts);
    const ClassificationReport rep = run_classification_report(cfg);
    for (const SystemClassificationSummary& s : rep.systems) {
        std::cout << to_string(s.system) << ": " << to_string(s.background_type)
                  << " at the background (discriminant "
                  << format_double(s.background_discriminant) << ")";
        if (s.has_speed) std::cout << ", characteristic speed " << s.background_speed;
        std::cout << '\n';
    }
    std::cout << "report: " << rep.report_path.string() << '\n';
    return 0;
}

int cmd_stability_map(const std::vector<double>& a_gamma, std::size_t theta_samples,
                      std::size_t curve_samples, const std::string& out_dir) {
    StabilityMapParams params;
    if (!a_gamma.empty()) params.a_gamma = a_gamma;
    params.theta_samples = theta_samples;
    params.curve_samples = curve_samples;
    const StabilityMapResult res = run_stability_map(params, out_dir);
    std::cout << res.n_queries << " amplification queries, max |eta| = "
              << format_double(res.max_modulus) << ", all stable: "
              << (res.all_stable ? "yes" : "no") << '\n';
    std::cout << "map: " << res.map_csv_path.string() << '\n';
    std::cout << "boundary curve: " << res.curve_csv_path.string() << '\n';
    return res.all_stable ? 0 : 2;
}

int cmd_sweep(const CommonOptions& opts, const std::vector<double>& temperatures) {
    const ScenarioConfig cfg = build_config(opts);
    std::vector<double> ts = temperatures;
    if (ts.empty()) ts = {0.0, 0.25, 0.5, 1.0, 2.0};
    const TemperatureSweepResult res = run_temperature_sweep(cfg, ts);
    for (const TemperatureSweepEntry& e : res.entries) {
        std::cout << "T = " << format_double(e.T) << "  xi = " << format_double(e.xi_T)
                  << "  status = " << to_string(e.status) << '\n';
    }
    std::cout << "sweep table: " << res.csv_path.string() << '\n';
    return 0;
}

int cmd_validate(const CommonOptions& opts) {
    const ScenarioConfig cfg = build_config(opts);
    std::cout << write_config(cfg);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-velocity stochastic hydrodynamics laboratory"};
    app.require_subcommand(1);

    CommonOptions relax_opts, classify_opts, sweep_opts, validate_opts;
    std::vector<double> sweep_temperatures;
    std::vector<double> map_a_gamma;
    std::size_t theta_samples = 256, curve_samples = 1024;
    std::string map_out = "out";

    add_common_options(app.add_subcommand("relax", "run the perturbation relaxation scenario"),
                       relax_opts);
    add_common_options(
        app.add_subcommand("classify", "classify the three systems on the initial field"),
        classify_opts);
    CLI::App* map_cmd =
        app.add_subcommand("stability-map", "tabulate max|eta| and the stability boundary");
    map_cmd->add_option("--a-gamma", map_a_gamma, "a*gamma values (default 0.01,0.1,1,10,100)")
        ->delimiter(',');
    map_cmd->add_option("--theta-samples", theta_samples, "theta grid size over [0, 2pi)");
    map_cmd->add_option("--curve-samples", curve_samples, "boundary curve sample count");
    map_cmd->add_option("-o,--output-dir", map_out, "output directory");
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep-temperature", "general-t relaxation across temperatures");
    add_common_options(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("-T,--temperatures", sweep_temperatures, "temperature list")
        ->delimiter(',');
    add_common_options(app.add_subcommand("validate-config", "print the normalized config"),
                       validate_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("relax")) return cmd_relax(relax_opts);
        if (app.got_subcommand("classify")) return cmd_classify(classify_opts);
        if (app.got_subcommand("stability-map"))
            return cmd_stability_map(map_a_gamma, theta_samples, curve_samples, map_out);
        if (app.got_subcommand("sweep-temperature"))
            return cmd_sweep(sweep_opts, sweep_temperatures);
        if (app.got_subcommand("validate-config")) return cmd_validate(validate_opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error";
        if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
        if (!e.field().empty()) std::cerr << " [" << e.field() << "]";
        std::cerr << ": " << e.what() << '\n';
        return 1;
    } catch (const InvalidParameterError& e) {
        std::cerr << "invalid parameter: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
