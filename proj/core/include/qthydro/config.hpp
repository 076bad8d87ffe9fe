#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qthydro/grid.hpp"
#include "qthydro/pde_system.hpp"
#include "qthydro/solver.hpp"
#include "qthydro/thermo.hpp"

namespace qthydro {

enum class SystemChoice { Nelson, ModifiedT0, GeneralT };

std::string_view to_string(SystemChoice sc);
SystemChoice parse_system_choice(const std::string& text);

/// Initial data: a Gaussian bump of amplitude epsilon and width sigma in u,
/// centered at q0, on the uniform background (u_inf, v_inf); v unperturbed.
struct InitParams {
    double u_inf = 0.5;
    double v_inf = 0.0;
    double epsilon = 0.1;
    double sigma = 1.0;
    double q0 = 0.0;
};

struct GridParams {
    double q_min = -50.0;
    double q_max = 50.0;
    std::size_t n_cells = 1024;
    double gamma = 1.0;  ///< tau / h
    BoundaryKind boundary = BoundaryKind::Periodic;
};

struct RunParams {
    long horizon_steps = 60;
    std::vector<double> snapshot_times;  ///< extra instants beyond the standard set
};

/// Full description of one scenario, loadable from a flat key = value file.
struct ScenarioConfig {
    SystemChoice system = SystemChoice::ModifiedT0;
    ThermoParams thermo;  ///< reduced units by default
    GridParams grid;
    InitParams init;
    SolverConfig solver;
    RunParams run;
    std::string output_dir = "out";
    long seed = 0;  ///< reserved; the shipped scenarios are deterministic

    Grid make_grid() const;
    FieldState make_initial_field() const;
    double resolve_xi() const;  ///< xi_T from thermo for general-t, else 1
    PdeSystem make_system() const;
    Background background() const { return {init.u_inf, init.v_inf}; }

    /// Standard snapshot instants {0, tau, 20 tau, 50 tau} clipped to the
    /// horizon, merged with run.snapshot_times.
    std::vector<double> snapshot_times() const;

    /// Throws ConfigError naming the violated field.
    void validate() const;

    bool operator==(const ScenarioConfig&) const;
};

/// Parses and validates a config file; defaults apply to every absent key.
ScenarioConfig load_config(const std::string& path);

/// Same, from an already-open stream (`name` labels parse errors).
ScenarioConfig parse_config(std::istream& in, const std::string& name);

/// Applies one `key=value` override, as given on the command line.
/// Does not re-validate; callers validate once all overrides are in.
void apply_override(ScenarioConfig& cfg, const std::string& key,
                    const std::string& value);

/// Round-trip text form: load_config(write_config(c)) == c field-exact.
std::string write_config(const ScenarioConfig& cfg);

}  // namespace qthydro
