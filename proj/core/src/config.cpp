#include "qthydro/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "qthydro/csv.hpp"
#include "qthydro/errors.hpp"

namespace qthydro {

std::string_view to_string(SystemChoice sc) {
    switch (sc) {
        case SystemChoice::Nelson: return "nelson";
        case SystemChoice::ModifiedT0: return "modified-t0";
        case SystemChoice::GeneralT: return "general-t";
    }
    return "unknown";
}

SystemChoice parse_system_choice(const std::string& text) {
    if (text == "nelson") return SystemChoice::Nelson;
    if (text == "modified-t0") return SystemChoice::ModifiedT0;
    if (text == "general-t") return SystemChoice::GeneralT;
    throw ConfigError("unknown system '" + text + "' (expected nelson | modified-t0 | general-t)",
                      "system");
}

Grid ScenarioConfig::make_grid() const {
    Grid g;
    g.q_min = grid.q_min;
    g.q_max = grid.q_max;
    g.n_cells = grid.n_cells;
    g.boundary = grid.boundary;
    g.tau = grid.gamma * g.h();
    return g;
}

FieldState ScenarioConfig::make_initial_field() const {
    const Grid g = make_grid();
    FieldState f = FieldState::uniform(g, init.u_inf, init.v_inf);
    const double two_sigma_sq = 2.0 * init.sigma * init.sigma;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double dq = g.q(k) - init.q0;
        f.u[k] += init.epsilon * std::exp(-dq * dq / two_sigma_sq);
    }
    return f;
}

double ScenarioConfig::resolve_xi() const {
    if (system != SystemChoice::GeneralT) return 1.0;
    return temperature_factors(thermo).xi_T;
}

PdeSystem ScenarioConfig::make_system() const {
    switch (system) {
        case SystemChoice::Nelson: return make_nelson();
        case SystemChoice::ModifiedT0: return make_modified_t0();
        case SystemChoice::GeneralT: return make_general_t(resolve_xi());
    }
    throw ConfigError("invalid system enum value", "system");
}

std::vector<double> ScenarioConfig::snapshot_times() const {
    const double tau = make_grid().tau;
    const double horizon = static_cast<double>(run.horizon_steps) * tau;
    std::vector<double> times;
    for (double mult : {0.0, 1.0, 20.0, 50.0}) {
        const double ts = mult * tau;
        if (ts <= horizon * (1.0 + 1e-12)) times.push_back(ts);
    }
    times.insert(times.end(), run.snapshot_times.begin(), run.snapshot_times.end());
    return times;
}

void ScenarioConfig::validate() const {
    try {
        thermo.validate();
    } catch (const InvalidParameterError& e) {
        throw ConfigError(e.what(), "thermo");
    }
    Grid g = make_grid();
    try {
        g.validate();
    } catch (const InvalidParameterError& e) {
        throw ConfigError(e.what(), "grid");
    }
    try {
        solver.validate();
    } catch (const InvalidParameterError& e) {
        throw ConfigError(e.what(), "solver");
    }
    if (!(init.epsilon >= 0.0))
        throw ConfigError("init.epsilon must be >= 0", "init.epsilon");
    if (!(init.sigma >= 2.0 * g.h()))
        throw ConfigError("init.sigma must be >= 2h to be resolvable", "init.sigma");
    if (!(init.q0 >= g.q_min && init.q0 <= g.q_max))
        throw ConfigError("init.q0 must lie inside the domain", "init.q0");
    if (run.horizon_steps < 1)
        throw ConfigError("run.horizon_steps must be >= 1", "run.horizon_steps");
    if (run.horizon_steps > solver.max_steps)
        throw ConfigError("run.horizon_steps must not exceed solver.max_steps",
                          "run.horizon_steps");
    const double horizon = static_cast<double>(run.horizon_steps) * g.tau;
    for (double ts : run.snapshot_times) {
        if (ts < 0.0 || ts > horizon * (1.0 + 1e-12))
            throw ConfigError("run.snapshot_times entries must lie in [0, horizon]",
                              "run.snapshot_times");
    }
    if (output_dir.empty()) throw ConfigError("output_dir must not be empty", "output_dir");
    if (system == SystemChoice::GeneralT) resolve_xi();  // surfaces thermo problems here
}

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
    return system == o.system && thermo.hbar == o.thermo.hbar && thermo.k_B == o.thermo.k_B &&
           thermo.m == o.thermo.m && thermo.omega == o.thermo.omega && thermo.T == o.thermo.T &&
           grid.q_min == o.grid.q_min && grid.q_max == o.grid.q_max &&
           grid.n_cells == o.grid.n_cells && grid.gamma == o.grid.gamma &&
           grid.boundary == o.grid.boundary && init.u_inf == o.init.u_inf &&
           init.v_inf == o.init.v_inf && init.epsilon == o.init.epsilon &&
           init.sigma == o.init.sigma && init.q0 == o.init.q0 &&
           solver.picard_tol == o.solver.picard_tol &&
           solver.picard_max_iters == o.solver.picard_max_iters &&
           solver.blowup_factor == o.solver.blowup_factor &&
           solver.max_steps == o.solver.max_steps &&
           run.horizon_steps == o.run.horizon_steps &&
           run.snapshot_times == o.run.snapshot_times && output_dir == o.output_dir &&
           seed == o.seed;
}

namespace {

double parse_number(const std::string& key, const std::string& value, int line) {
    char* end = nullptr;
    const double x = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || !std::isfinite(x))
        throw ConfigError("value '" + value + "' for " + key + " is not a finite number",
                          key, line);
    return x;
}

long parse_integer(const std::string& key, const std::string& value, int line) {
    const double x = parse_number(key, value, line);
    const long i = static_cast<long>(x);
    if (static_cast<double>(i) != x)
        throw ConfigError("value '" + value + "' for " + key + " is not an integer", key,
                          line);
    return i;
}

std::vector<double> parse_number_list(const std::string& key, const std::string& value,
                                      int line) {
    std::vector<double> out;
    std::string item;
    std::istringstream ss(value);
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        const auto e = item.find_last_not_of(" \t");
        out.push_back(parse_number(key, item.substr(b, e - b + 1), line));
    }
    return out;
}

BoundaryKind parse_boundary(const std::string& value, int line) {
    if (value == "periodic") return BoundaryKind::Periodic;
    if (value == "far-field") return BoundaryKind::FarField;
    throw ConfigError("grid.boundary must be periodic | far-field", "grid.boundary", line);
}

void apply_key(ScenarioConfig& c, const std::string& key, const std::string& value,
               int line) {
    if (key == "system") {
        try {
            c.system = parse_system_choice(value);
        } catch (const ConfigError& e) {
            throw ConfigError(e.what(), "system", line);
        }
    } else if (key == "thermo.hbar") {
        c.thermo.hbar = parse_number(key, value, line);
    } else if (key == "thermo.k_B") {
        c.thermo.k_B = parse_number(key, value, line);
    } else if (key == "thermo.m") {
        c.thermo.m = parse_number(key, value, line);
    } else if (key == "thermo.omega") {
        c.thermo.omega = parse_number(key, value, line);
    } else if (key == "thermo.T") {
        c.thermo.T = parse_number(key, value, line);
    } else if (key == "grid.q_min") {
        c.grid.q_min = parse_number(key, value, line);
    } else if (key == "grid.q_max") {
        c.grid.q_max = parse_number(key, value, line);
    } else if (key == "grid.n_cells") {
        const long n = parse_integer(key, value, line);
        if (n < 0) throw ConfigError("grid.n_cells must be positive", key, line);
        c.grid.n_cells = static_cast<std::size_t>(n);
    } else if (key == "grid.gamma") {
        c.grid.gamma = parse_number(key, value, line);
    } else if (key == "grid.boundary") {
        c.grid.boundary = parse_boundary(value, line);
    } else if (key == "init.u_inf") {
        c.init.u_inf = parse_number(key, value, line);
    } else if (key == "init.v_inf") {
        c.init.v_inf = parse_number(key, value, line);
    } else if (key == "init.epsilon") {
        c.init.epsilon = parse_number(key, value, line);
    } else if (key == "init.sigma") {
        c.init.sigma = parse_number(key, value, line);
    } else if (key == "init.q0") {
        c.init.q0 = parse_number(key, value, line);
    } else if (key == "solver.picard_tol") {
        c.solver.picard_tol = parse_number(key, value, line);
    } else if (key == "solver.picard_max_iters") {
        c.solver.picard_max_iters = static_cast<int>(parse_integer(key, value, line));
    } else if (key == "solver.blowup_factor") {
        c.solver.blowup_factor = parse_number(key, value, line);
    } else if (key == "solver.max_steps") {
        c.solver.max_steps = parse_integer(key, value, line);
    } else if (key == "run.horizon_steps") {
        c.run.horizon_steps = parse_integer(key, value, line);
    } else if (key == "run.snapshot_times") {
        c.run.snapshot_times = parse_number_list(key, value, line);
    } else if (key == "output_dir") {
        c.output_dir = value;
    } else if (key == "seed") {
        c.seed = parse_integer(key, value, line);
    } else {
        throw ConfigError("unknown key '" + key + "'", key, line);
    }
}

}  // namespace

ScenarioConfig parse_config(std::istream& in, const std::string& name) {
    ScenarioConfig cfg;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(name + ": line " + std::to_string(line_no) +
                                  " is not of the form key = value",
                              "", line_no);
        auto trim = [](std::string s) {
            const auto bb = s.find_first_not_of(" \t");
            if (bb == std::string::npos) return std::string{};
            const auto ee = s.find_last_not_of(" \t");
            return s.substr(bb, ee - bb + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(name + ": empty key on line " + std::to_string(line_no), "",
                              line_no);
        apply_key(cfg, key, value, line_no);
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    apply_key(cfg, key, value, 0);
}

std::string write_config(const ScenarioConfig& c) {
    std::ostringstream out;
    const auto num = [](double x) { return format_double(x); };
    out << "# scenario configuration\n";
    out << "system = " << to_string(c.system) << '\n';
    out << "thermo.hbar = " << num(c.thermo.hbar) << '\n';
    out << "thermo.k_B = " << num(c.thermo.k_B) << '\n';
    out << "thermo.m = " << num(c.thermo.m) << '\n';
    out << "thermo.omega = " << num(c.thermo.omega) << '\n';
    out << "thermo.T = " << num(c.thermo.T) << '\n';
    out << "grid.q_min = " << num(c.grid.q_min) << '\n';
    out << "grid.q_max = " << num(c.grid.q_max) << '\n';
    out << "grid.n_cells = " << c.grid.n_cells << '\n';
    out << "grid.gamma = " << num(c.grid.gamma) << '\n';
    out << "grid.boundary = "
        << (c.grid.boundary == BoundaryKind::Periodic ? "periodic" : "far-field") << '\n';
    out << "init.u_inf = " << num(c.init.u_inf) << '\n';
    out << "init.v_inf = " << num(c.init.v_inf) << '\n';
    out << "init.epsilon = " << num(c.init.epsilon) << '\n';
    out << "init.sigma = " << num(c.init.sigma) << '\n';
    out << "init.q0 = " << num(c.init.q0) << '\n';
    out << "solver.picard_tol = " << num(c.solver.picard_tol) << '\n';
    out << "solver.picard_max_iters = " << c.solver.picard_max_iters << '\n';
    out << "solver.blowup_factor = " << num(c.solver.blowup_factor) << '\n';
    out << "solver.max_steps = " << c.solver.max_steps << '\n';
    out << "run.horizon_steps = " << c.run.horizon_steps << '\n';
    out << "run.snapshot_times =";
    for (std::size_t i = 0; i < c.run.snapshot_times.size(); ++i) {
        out << (i == 0 ? " " : ", ") << num(c.run.snapshot_times[i]);
    }
    out << '\n';
    out << "output_dir = " << c.output_dir << '\n';
    out << "seed = " << c.seed << '\n';
    return out.str();
}

}  // namespace qthydro
