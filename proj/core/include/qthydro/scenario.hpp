#pragma once

#include <array>
#include <filesystem>
#include <vector>

#include "qthydro/classification.hpp"
#include "qthydro/config.hpp"
#include "qthydro/solver.hpp"
#include "qthydro/stability.hpp"

namespace qthydro {

/// Process exit code contract: 0 completed, 2 diverged, 3 iteration failed
/// (usage and config errors exit 1 at the CLI layer).
int exit_code_for(RunStatus status);

struct RelaxationResult {
    RunReport report;
    std::filesystem::path output_dir;
    int exit_code = 0;
    std::vector<std::filesystem::path> snapshot_files;
};

/// Runs the perturbation-relaxation scenario and persists snapshot CSVs,
/// a diagnostics CSV, a run summary, the normalized config and a plot
/// script under cfg.output_dir. Solver failure is recorded in the report
/// and exit code, not thrown.
RelaxationResult run_relaxation(const ScenarioConfig& cfg);

struct TwoHumpReport {
    bool two_hump = false;
    int n_extrema = 0;
    std::array<double, 2> positions{};  ///< q of the extrema, ascending
    std::array<double, 2> values{};     ///< drift-velocity deviations there
};

/// Inspects the t = tau snapshot for the early drift response: exactly two
/// interior extrema of opposite sign above the amplitude floor
/// 1e-3 max|v - v_inf|. Throws InsufficientAmplitudeError when the profile
/// carries no signal (max deviation < 1e-12).
TwoHumpReport report_two_hump(const RunReport& report);

struct SystemClassificationSummary {
    SystemChoice system;
    FieldClassificationSummary field;
    PdeType background_type;
    double background_discriminant;
    double xi = 1.0;
    bool has_speed = false;
    double background_speed = 0.0;  ///< u_inf + v_inf when parabolic
};

struct ClassificationReport {
    std::array<SystemClassificationSummary, 3> systems;
    std::filesystem::path report_path;
    std::filesystem::path speed_csv_path;
};

/// Classifies the initial field under all three systems (general-t at the
/// configured temperature) and writes a text report plus the characteristic
/// speed field u + v as CSV.
ClassificationReport run_classification_report(const ScenarioConfig& cfg);

struct StabilityMapParams {
    std::vector<double> a_gamma{0.01, 0.1, 1.0, 10.0, 100.0};
    std::size_t theta_samples = 256;  ///< theta_j = 2 pi j / N over [0, 2pi)
    std::size_t curve_samples = 1024;
};

struct StabilityMapResult {
    bool all_stable = true;
    double max_modulus = 0.0;
    std::size_t n_queries = 0;
    std::filesystem::path map_csv_path;
    std::filesystem::path curve_csv_path;
    std::filesystem::path summary_path;
};

/// Writes max|eta| over the (a gamma) x theta grid and the sampled boundary
/// curve as CSVs for plotting.
StabilityMapResult run_stability_map(const StabilityMapParams& params,
                                     const std::filesystem::path& out_dir);

struct TemperatureSweepEntry {
    double T;
    double xi_T;
    double D_eff;
    RunStatus status;
    long steps_taken;
    double t_half;  ///< first time max|u - u_inf| halves; NaN if never reached
    std::filesystem::path dir;
};

struct TemperatureSweepResult {
    std::vector<TemperatureSweepEntry> entries;
    std::filesystem::path csv_path;
};

/// Runs the general-t relaxation for each temperature (concurrently, one
/// output subdirectory per entry) and writes comparative decay diagnostics.
/// Per-temperature solver statuses are recorded, never thrown.
TemperatureSweepResult run_temperature_sweep(const ScenarioConfig& cfg,
                                             const std::vector<double>& T_values);

}  // namespace qthydro
