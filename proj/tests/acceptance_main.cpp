// Acceptance suite: runs every contract criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qthydro/classification.hpp"
#include "qthydro/config.hpp"
#include "qthydro/pde_system.hpp"
#include "qthydro/reference_solver.hpp"
#include "qthydro/scenario.hpp"
#include "qthydro/solver.hpp"
#include "qthydro/stability.hpp"
#include "qthydro/thermo.hpp"

using namespace qthydro;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

constexpr double kEps = 2.220446049250313e-16;  // 2^-52

struct Criterion {
    int id;
    std::string label;
    bool pass = true;
    double seconds = 0.0;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) pass = false;
        notes.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
    }
    void note(const std::string& what) { notes.push_back("       " + what); }
};

std::vector<Criterion> g_results;

template <typename F>
void run_criterion(int id, const std::string& label, F&& body) {
    Criterion c{id, label, true, 0.0, {}};
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.pass = false;
        c.notes.push_back(std::string("  FAIL unexpected exception: ") + e.what());
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    g_results.push_back(std::move(c));
}

Grid periodic_grid(std::size_t n, double q_min, double q_max, double gamma) {
    Grid g;
    g.q_min = q_min;
    g.q_max = q_max;
    g.n_cells = n;
    g.boundary = BoundaryKind::Periodic;
    g.tau = gamma * g.h();
    return g;
}

PdeSystem scalar_advection(double a) {
    PdeSystem sys;
    sys.kind = SystemKind::Custom;
    sys.coeffs = [a](double, double, StateVec) {
        return CoeffTable{1.0, a, 0.0, 0.0, 0.0, 0.0, 1.0, a};
    };
    sys.source = [](double, double, StateVec) { return std::array<double, 2>{0.0, 0.0}; };
    return sys;
}

FieldState sine_field(const Grid& g, double t) {
    FieldState f = FieldState::uniform(g, 0.0, 0.0, t);
    for (std::size_t k = 0; k < f.size(); ++k) {
        f.u[k] = std::sin(2.0 * pi * (g.q(k) - t));
        f.v[k] = f.u[k];
    }
    return f;
}

double sup_diff(const FieldState& a, const FieldState& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        m = std::max(m, std::abs(a.u[k] - b.u[k]));
        m = std::max(m, std::abs(a.v[k] - b.v[k]));
    }
    return m;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("qthydro_acceptance_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::uint64_t ulps_apart(double a, double b) {
    if (a == b) return 0;
    const double diff = std::abs(a - b);
    const double scale = std::max(std::abs(a), std::abs(b));
    return static_cast<std::uint64_t>(diff / (scale * kEps));
}

double dyadic(double x) { return std::round(x * 1048576.0) / 1048576.0; }

void criterion1(Criterion& c) {
    std::mt19937_64 rng(20250811);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    const PdeSystem nelson = make_nelson();
    const PdeSystem modified = make_modified_t0();
    double worst_nelson = 0.0, worst_modified = 0.0;
    for (int i = 0; i < 100000; ++i) {
        // dyadic lattice draws keep the coefficient tables exact
        const StateVec s{dyadic(dist(rng)), dyadic(dist(rng))};
        const Classification cn = classify(nelson, 0, 0, s);
        const double scale_n = std::max(1.0, cn.b * cn.b + std::abs(cn.a * cn.c));
        worst_nelson =
            std::max(worst_nelson, std::abs(cn.discriminant + s.u * s.u) / scale_n);
        const Classification cm = classify(modified, 0, 0, s);
        const double scale_m = std::max(1.0, cm.b * cm.b + std::abs(cm.a * cm.c));
        worst_modified = std::max(worst_modified, std::abs(cm.discriminant) / scale_m);
    }
    c.check(worst_nelson <= 8.0 * kEps,
            "nelson discriminant = -u^2, worst " + fmt(worst_nelson / kEps) + " ulp of scale");
    c.check(worst_modified <= 8.0 * kEps,
            "modified discriminant = 0, worst " + fmt(worst_modified / kEps) + " ulp of scale");
}

void criterion2(Criterion& c) {
    std::mt19937_64 rng(20250812);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    const PdeSystem modified = make_modified_t0();
    bool exact = true;
    for (int i = 0; i < 100000 && exact; ++i) {
        const StateVec s{dist(rng), dist(rng)};
        exact = characteristic_speed(modified, s) == s.u + s.v;
    }
    c.check(exact, "parabolic double root equals u + v exactly on 1e5 random states");
}

void criterion3(Criterion& c) {
    const PdeSystem sys = scalar_advection(1.0);
    std::vector<double> errs;
    for (std::size_t n : {128u, 256u, 512u}) {
        const Grid g = periodic_grid(n, 0.0, 1.0, 1.0);
        const RunReport rep = run(sys, sine_field(g, 0.0), {}, {1.0});
        if (rep.status != RunStatus::Completed) {
            c.check(false, "run did not complete at n = " + std::to_string(n));
            return;
        }
        errs.push_back(sup_diff(rep.snapshots.back(), sine_field(g, 1.0)));
    }
    c.note("errors at n = 128/256/512: " + fmt(errs[0]) + " / " + fmt(errs[1]) + " / " +
           fmt(errs[2]));
    c.check(errs[0] / errs[1] >= 3.5,
            "error ratio 128->256 = " + fmt(errs[0] / errs[1]) + " >= 3.5");
    c.check(errs[1] / errs[2] >= 3.5,
            "error ratio 256->512 = " + fmt(errs[1] / errs[2]) + " >= 3.5");
}

void criterion4(Criterion& c) {
    const PdeSystem sys = scalar_advection(1.0);
    for (double gamma : {0.1, 1.0, 10.0}) {
        const Grid g = periodic_grid(256, 0.0, 1.0, gamma);
        SolverConfig cfg;
        cfg.max_steps = 500;
        const RunReport rep = run(sys, sine_field(g, 0.0), cfg, {});
        const double growth =
            rep.diagnostics.back().l2_du / rep.diagnostics.front().l2_du;
        c.check(rep.status == RunStatus::Completed && growth <= 1.01,
                "gamma = " + fmt(gamma) + ": L2 growth over 500 steps = " + fmt(growth) +
                    " <= 1.01");
    }
}

void criterion5(Criterion& c) {
    double max_mod = 0.0;
    bool all = true;
    for (double ag : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        for (int j = 0; j < 256; ++j) {
            const StabilityVerdict v = is_stable({ag, 1.0, 2.0 * pi * j / 256.0});
            all = all && v.stable;
            max_mod = std::max(max_mod, v.max_root_modulus);
        }
    }
    c.check(all && max_mod <= 1.0 + 1e-12,
            "max |eta| over the sweep = " + fmt(max_mod) + " <= 1 + 1e-12");
    const GammaCurvePoint p0 = gamma_curve(0.0);
    const GammaCurvePoint ppi = gamma_curve(pi);
    c.check(std::abs(p0.r - 3.0) <= 1e-14 && std::abs(p0.s) <= 1e-14,
            "boundary anchor at phi = 0 is (3, 0) within 1e-14");
    c.check(std::abs(ppi.r + 5.0) <= 1e-14 && std::abs(ppi.s) <= 1e-14,
            "boundary anchor at phi = pi is (-5, 0) within 1e-14");
}

void criterion6(Criterion& c) {
    ScenarioConfig cfg;  // the documented default scenario, n = 1024
    cfg.output_dir = fresh_dir("relax").string();
    cfg.validate();
    const double tau = cfg.make_grid().tau;
    const double h = cfg.make_grid().h();
    const RelaxationResult res = run_relaxation(cfg);
    c.check(res.report.status == RunStatus::Completed, "default modified-t0 run completes");
    if (res.report.status != RunStatus::Completed) return;

    double amp[4] = {0, 0, 0, 0};
    const double expected_times[4] = {0.0, tau, 20.0 * tau, 50.0 * tau};
    for (int i = 0; i < 4; ++i) {
        bool found = false;
        for (const DiagnosticsRow& row : res.report.diagnostics) {
            if (std::abs(row.t - expected_times[i]) <= 1e-9 * tau) {
                amp[i] = row.max_du;
                found = true;
                break;
            }
        }
        if (!found) {
            c.check(false, "diagnostics row at t = " + fmt(expected_times[i]) + " missing");
            return;
        }
    }
    c.note("max|u - u_inf| at {0, tau, 20tau, 50tau} = {" + fmt(amp[0]) + ", " + fmt(amp[1]) +
           ", " + fmt(amp[2]) + ", " + fmt(amp[3]) + "}");
    c.check(amp[1] < amp[0] && amp[2] < amp[1] && amp[3] < amp[2],
            "max|u - u_inf| strictly decreases across {0, tau, 20tau, 50tau}");

    const double displacement =
        res.report.diagnostics.back().centroid - res.report.diagnostics.front().centroid;
    const double direction = cfg.init.u_inf + cfg.init.v_inf > 0 ? 1.0 : -1.0;
    c.check(direction * displacement >= 10.0 * h,
            "centroid displacement " + fmt(displacement) + " >= 10h toward u_inf + v_inf");

    const TwoHumpReport th = report_two_hump(res.report);
    c.check(th.two_hump, "drift response at t = tau is two-humped");
}

void criterion7(Criterion& c) {
    ScenarioConfig cfg;
    cfg.system = SystemChoice::Nelson;
    cfg.output_dir = fresh_dir("nelson").string();
    cfg.validate();
    const RelaxationResult res = run_relaxation(cfg);
    c.check(res.report.status == RunStatus::Diverged,
            std::string("nelson run status = ") + std::string(to_string(res.report.status)));
    c.check(res.report.steps_taken < 60,
            "terminated after " + std::to_string(res.report.steps_taken) + " < 60 steps");
}

void criterion8(Criterion& c) {
    ScenarioConfig cfg;
    cfg.grid.n_cells = 512;
    cfg.init.epsilon = 0.05;
    cfg.validate();
    const Grid g = cfg.make_grid();
    const FieldState init = cfg.make_initial_field();
    const double t_end = 20.0 * g.tau;
    const RunReport rep =
        run(make_modified_t0(), init, cfg.solver, {t_end}, cfg.background());
    const FieldState ref = reference_explicit_solve(make_modified_t0(), init, t_end);
    const double diff =
        rep.status == RunStatus::Completed ? sup_diff(rep.snapshots.back(), ref) : 1e300;
    c.check(diff <= 1e-2, "implicit vs explicit reference sup difference = " + fmt(diff) +
                              " <= 1e-2 (n = 512, t = 20 tau)");
}

void criterion9(Criterion& c) {
    // cold plateau: x = kappa omega / T >= 20
    double worst_cold = 0.0;
    for (double x : {20.0, 100.0, 500.0}) {
        const ThermoParams p{1.0, 1.0, 1.0, 1.0, 0.5 / x};
        worst_cold = std::max(worst_cold, std::abs(effective_diffusion(p) - 0.5) / 0.5);
    }
    c.check(worst_cold <= 1e-15,
            "D -> hbar/2m for x >= 20, worst relative error " + fmt(worst_cold));

    // classical plateau: x <= 1e-3
    double worst_hot = 0.0;
    for (double x : {1e-3, 1e-4, 1e-5}) {
        const ThermoParams p{1.0, 1.0, 1.0, 1.0, 0.5 / x};
        const double classical = p.k_B * p.T / (p.m * p.omega);
        worst_hot =
            std::max(worst_hot, std::abs(effective_diffusion(p) - classical) / classical);
    }
    c.check(worst_hot <= 1e-5,
            "D -> k_B T / (m omega) for x <= 1e-3, worst relative error " + fmt(worst_hot));

    std::uint64_t worst_ulps = 0;
    for (int i = 0; i < 60; ++i) {
        const double T = std::pow(10.0, -3.0 + 6.0 * i / 59.0);
        const ThermoParams p{1.0, 1.0, 1.0, 1.0, T};
        worst_ulps = std::max(
            worst_ulps,
            ulps_apart(p.k_B * effective_temperature(p), p.omega * effective_influence(p)));
    }
    c.check(worst_ulps <= 4,
            "k_B T_eff = omega J_eff across the 60-point log sweep, worst " +
                std::to_string(worst_ulps) + " ulps");
}

void criterion10(Criterion& c) {
    ScenarioConfig cfg;
    cfg.system = SystemChoice::GeneralT;
    cfg.output_dir = fresh_dir("sweep").string();
    cfg.validate();
    const TemperatureSweepResult sweep =
        run_temperature_sweep(cfg, {0.0, 0.25, 0.5, 1.0, 2.0});

    ScenarioConfig mod = cfg;
    mod.system = SystemChoice::ModifiedT0;
    mod.output_dir = fresh_dir("sweep_ref").string();
    const RelaxationResult ref = run_relaxation(mod);

    bool identical = true;
    for (const fs::path& snap : ref.snapshot_files) {
        identical = identical &&
                    slurp(sweep.entries[0].dir / snap.filename()) == slurp(snap);
    }
    identical = identical && slurp(sweep.entries[0].dir / "diagnostics.csv") ==
                                 slurp(ref.output_dir / "diagnostics.csv");
    c.check(identical, "general-t at T = 0 reproduces the modified-t0 run byte-identically");

    bool monotone = true;
    for (std::size_t i = 1; i < sweep.entries.size(); ++i) {
        monotone = monotone && sweep.entries[i].xi_T > sweep.entries[i - 1].xi_T;
    }
    c.check(monotone, "xi_T column strictly increases with temperature");
    for (const TemperatureSweepEntry& e : sweep.entries) {
        c.note("T = " + fmt(e.T) + ": xi = " + fmt(e.xi_T) + ", status " +
               std::string(to_string(e.status)));
    }
}

}  // namespace

int main() {
    run_criterion(1, "classification identities on 1e5 random states", criterion1);
    run_criterion(2, "modified-system characteristic speed u + v", criterion2);
    run_criterion(3, "second-order convergence on linear advection", criterion3);
    run_criterion(4, "empirical absolute stability, gamma in {0.1, 1, 10}", criterion4);
    run_criterion(5, "analytic absolute stability and boundary anchors", criterion5);
    run_criterion(6, "relaxation experiment, default modified-t0 run", criterion6);
    run_criterion(7, "blow-up contrast on the elliptic system", criterion7);
    run_criterion(8, "implicit scheme vs explicit reference oracle", criterion8);
    run_criterion(9, "effective-diffusion limits and influence identity", criterion9);
    run_criterion(10, "finite-temperature reduction at T = 0", criterion10);

    // stated runtime budgets; unconstrained criteria get an infinite limit
    const double inf = std::numeric_limits<double>::infinity();
    const double runtime_limits[10] = {1.0, inf, 10.0, inf, inf, 30.0, inf, 60.0, inf, inf};
    int failures = 0;
    for (Criterion& c : g_results) {
        const double limit = runtime_limits[c.id - 1];
        if (c.seconds > limit) {
            c.pass = false;
            c.notes.push_back("  FAIL runtime " + fmt(c.seconds) + " s exceeds " + fmt(limit) +
                              " s");
        }
        std::printf("[%s] criterion %2d: %s (%.2f s)\n", c.pass ? "PASS" : "FAIL", c.id,
                    c.label.c_str(), c.seconds);
        for (const std::string& note : c.notes) std::printf("%s\n", note.c_str());
        if (!c.pass) ++failures;
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures;
}
