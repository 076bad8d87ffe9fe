#include "qthydro/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include "qthydro/csv.hpp"
#include "qthydro/errors.hpp"
#include "qthydro/thermo.hpp"

namespace qthydro {

namespace fs = std::filesystem;

int exit_code_for(RunStatus status) {
    switch (status) {
        case RunStatus::Completed: return 0;
        case RunStatus::Diverged: return 2;
        case RunStatus::IterationFailed: return 3;
    }
    return 1;
}

namespace {

std::string snapshot_filename(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snapshot_%03zu.csv", index);
    return buf;
}

void write_field_csv(const fs::path& path, const FieldState& f) {
    CsvWriter csv(path, "q,u,v");
    for (std::size_t k = 0; k < f.size(); ++k) {
        csv.row({f.grid.q(k), f.u[k], f.v[k]});
    }
}

const char* kPlotScript = R"PY(#!/usr/bin/env python3
"""Plot the snapshot profiles and amplitude history of one run.

Reads only the CSV files next to this script; writes snapshots.png and
amplitudes.png into the same directory.
"""
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))


def read_csv(name):
    with open(os.path.join(here, name), newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


_, index_rows = read_csv("snapshots_index.csv")
fig, (ax_u, ax_v) = plt.subplots(2, 1, sharex=True, figsize=(8, 7))
for _, t, fname in index_rows:
    _, rows = read_csv(fname)
    q = [float(r[0]) for r in rows]
    u = [float(r[1]) for r in rows]
    v = [float(r[2]) for r in rows]
    ax_u.plot(q, u, label=f"t = {float(t):.4g}")
    ax_v.plot(q, v, label=f"t = {float(t):.4g}")
ax_u.set_ylabel("u (diffusion velocity)")
ax_v.set_ylabel("v (drift velocity)")
ax_v.set_xlabel("q")
ax_u.legend(fontsize=8)
fig.tight_layout()
fig.savefig(os.path.join(here, "snapshots.png"), dpi=150)

header, rows = read_csv("diagnostics.csv")
t = [float(r[0]) for r in rows]
fig2, ax = plt.subplots(figsize=(8, 5))
ax.plot(t, [float(r[1]) for r in rows], label="max |u - u_inf|")
ax.plot(t, [float(r[2]) for r in rows], label="max |v - v_inf|")
ax.set_xlabel("t")
ax.set_ylabel("perturbation amplitude")
ax.legend()
fig2.tight_layout()
fig2.savefig(os.path.join(here, "amplitudes.png"), dpi=150)
print("wrote snapshots.png and amplitudes.png")
)PY";

}  // namespace

RelaxationResult run_relaxation(const ScenarioConfig& cfg) {
    cfg.validate();
    RelaxationResult res;
    res.output_dir = fs::path(cfg.output_dir);
    fs::create_directories(res.output_dir);

    const PdeSystem sys = cfg.make_system();
    const FieldState init = cfg.make_initial_field();
    res.report = run(sys, init, cfg.solver, cfg.snapshot_times(), cfg.background(),
                     cfg.run.horizon_steps);
    res.exit_code = exit_code_for(res.report.status);

    {
        CsvWriter index(res.output_dir / "snapshots_index.csv", "index,t,file");
        for (std::size_t i = 0; i < res.report.snapshots.size(); ++i) {
            const std::string fname = snapshot_filename(i);
            write_field_csv(res.output_dir / fname, res.report.snapshots[i]);
            index.raw_row(std::to_string(i) + "," +
                          format_double(res.report.snapshots[i].t) + "," + fname);
            res.snapshot_files.push_back(res.output_dir / fname);
        }
    }
    {
        CsvWriter diag(res.output_dir / "diagnostics.csv",
                       "t,max_du,max_dv,l2_du,l2_dv,centroid,picard_iters");
        for (const DiagnosticsRow& row : res.report.diagnostics) {
            diag.row({row.t, row.max_du, row.max_dv, row.l2_du, row.l2_dv, row.centroid,
                      static_cast<double>(row.picard_iters)});
        }
    }
    {
        std::ofstream cfg_out(res.output_dir / "config.cfg", std::ios::binary);
        cfg_out << write_config(cfg);
    }
    {
        std::ofstream plot(res.output_dir / "plot_snapshots.py", std::ios::binary);
        plot << kPlotScript;
    }
    {
        const DiagnosticsRow& last = res.report.diagnostics.back();
        const DiagnosticsRow& first = res.report.diagnostics.front();
        std::ofstream sum(res.output_dir / "run_summary.txt", std::ios::binary);
        sum << "status = " << to_string(res.report.status) << '\n';
        sum << "exit_code = " << res.exit_code << '\n';
        sum << "system = " << to_string(cfg.system) << '\n';
        sum << "steps_taken = " << res.report.steps_taken << '\n';
        sum << "tau = " << format_double(init.grid.tau) << '\n';
        sum << "h = " << format_double(init.grid.h()) << '\n';
        sum << "xi = " << format_double(cfg.resolve_xi()) << '\n';
        sum << "max_picard_iters = " << res.report.max_picard_iters << '\n';
        sum << "snapshot_count = " << res.report.snapshots.size() << '\n';
        sum << "final_t = " << format_double(last.t) << '\n';
        sum << "final_max_du = " << format_double(last.max_du) << '\n';
        sum << "final_max_dv = " << format_double(last.max_dv) << '\n';
        sum << "centroid_displacement = " << format_double(last.centroid - first.centroid)
            << '\n';
    }
    return res;
}

TwoHumpReport report_two_hump(const RunReport& report) {
    const FieldState* snap = nullptr;
    for (const FieldState& f : report.snapshots) {
        const double tau = f.grid.tau;
        if (std::abs(f.t - tau) <= 1e-9 * tau) {
            snap = &f;
            break;
        }
    }
    if (!snap)
        throw InvalidParameterError("report_two_hump: the run carries no t = tau snapshot");

    const double v_inf = report.background.v_inf;
    std::vector<double> dv(snap->size());
    double amp = 0.0;
    for (std::size_t k = 0; k < dv.size(); ++k) {
        dv[k] = snap->v[k] - v_inf;
        amp = std::max(amp, std::abs(dv[k]));
    }
    if (amp < 1e-12)
        throw InsufficientAmplitudeError(
            "report_two_hump: drift deviation below 1e-12, nothing to detect");

    const double floor = 1e-3 * amp;
    TwoHumpReport out;
    std::vector<std::pair<double, double>> extrema;  // (q, value)
    for (std::size_t k = 1; k + 1 < dv.size(); ++k) {
        const double dl = dv[k] - dv[k - 1];
        const double dr = dv[k + 1] - dv[k];
        const bool is_max = dl > 0.0 && dr < 0.0;
        const bool is_min = dl < 0.0 && dr > 0.0;
        if ((is_max || is_min) && std::abs(dv[k]) >= floor) {
            extrema.emplace_back(snap->grid.q(k), dv[k]);
        }
    }
    out.n_extrema = static_cast<int>(extrema.size());
    out.two_hump = extrema.size() == 2 && extrema[0].second * extrema[1].second < 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(2, extrema.size()); ++i) {
        out.positions[i] = extrema[i].first;
        out.values[i] = extrema[i].second;
    }
    return out;
}

ClassificationReport run_classification_report(const ScenarioConfig& cfg) {
    cfg.validate();
    ClassificationReport out;
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);

    const FieldState init = cfg.make_initial_field();
    const StateVec bg{cfg.init.u_inf, cfg.init.v_inf};
    const std::array<SystemChoice, 3> choices{SystemChoice::Nelson, SystemChoice::ModifiedT0,
                                              SystemChoice::GeneralT};

    std::ofstream rep(dir / "classification.txt", std::ios::binary);
    for (std::size_t i = 0; i < choices.size(); ++i) {
        ScenarioConfig c = cfg;
        c.system = choices[i];
        const PdeSystem sys = c.make_system();

        SystemClassificationSummary& s = out.systems[i];
        s.system = choices[i];
        s.xi = sys.kind == SystemKind::GeneralT ? sys.xi : 1.0;
        s.field = classify_field(sys, init).summary;
        const Classification bg_cls = classify(sys, 0.0, cfg.init.q0, bg);
        s.background_type = bg_cls.type_tag;
        s.background_discriminant = bg_cls.discriminant;
        if (bg_cls.type_tag == PdeType::Parabolic) {
            s.has_speed = true;
            s.background_speed = characteristic_speed(sys, bg);
        }

        const std::string name(to_string(choices[i]));
        rep << name << ".background_type = " << to_string(s.background_type) << '\n';
        rep << name << ".background_discriminant = "
            << format_double(s.background_discriminant) << '\n';
        if (choices[i] == SystemChoice::GeneralT)
            rep << name << ".xi = " << format_double(s.xi) << '\n';
        if (s.has_speed)
            rep << name << ".characteristic_speed = " << format_double(s.background_speed)
                << '\n';
        rep << name << ".elliptic_points = " << s.field.n_elliptic << '\n';
        rep << name << ".parabolic_points = " << s.field.n_parabolic << '\n';
        rep << name << ".hyperbolic_points = " << s.field.n_hyperbolic << '\n';
        rep << name << ".degenerate_points = " << s.field.n_degenerate << '\n';
        rep << name << ".disc_min = " << format_double(s.field.disc_min) << '\n';
        rep << name << ".disc_max = " << format_double(s.field.disc_max) << '\n';
    }
    out.report_path = dir / "classification.txt";

    // transport speed u + v of the parabolic family over the initial field
    CsvWriter speed(dir / "characteristic_speed.csv", "q,speed");
    for (std::size_t k = 0; k < init.size(); ++k) {
        speed.row({init.grid.q(k), init.u[k] + init.v[k]});
    }
    out.speed_csv_path = dir / "characteristic_speed.csv";
    return out;
}

StabilityMapResult run_stability_map(const StabilityMapParams& params,
                                     const fs::path& out_dir) {
    if (params.a_gamma.empty())
        throw InvalidParameterError("run_stability_map: a_gamma range must be nonempty");
    if (params.theta_samples == 0)
        throw InvalidParameterError("run_stability_map: theta_samples must be positive");
    fs::create_directories(out_dir);

    StabilityMapResult out;
    out.map_csv_path = out_dir / "stability_map.csv";
    out.curve_csv_path = out_dir / "gamma_curve.csv";
    out.summary_path = out_dir / "stability_summary.txt";

    {
        CsvWriter map(out.map_csv_path, "a_gamma,theta,max_eta,stable");
        for (double ag : params.a_gamma) {
            for (std::size_t j = 0; j < params.theta_samples; ++j) {
                const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                                     static_cast<double>(params.theta_samples);
                const StabilityVerdict verdict = is_stable({ag, 1.0, theta});
                out.all_stable = out.all_stable && verdict.stable;
                out.max_modulus = std::max(out.max_modulus, verdict.max_root_modulus);
                ++out.n_queries;
                map.row({ag, theta, verdict.max_root_modulus,
                         verdict.stable ? 1.0 : 0.0});
            }
        }
    }
    {
        CsvWriter curve(out.curve_csv_path, "phi,r,s");
        for (std::size_t j = 0; j < params.curve_samples; ++j) {
            const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) /
                               static_cast<double>(params.curve_samples);
            const GammaCurvePoint p = gamma_curve(phi);
            curve.row({p.phi, p.r, p.s});
        }
    }
    std::ofstream sum(out.summary_path, std::ios::binary);
    sum << "queries = " << out.n_queries << '\n';
    sum << "all_stable = " << (out.all_stable ? "true" : "false") << '\n';
    sum << "max_root_modulus = " << format_double(out.max_modulus) << '\n';
    return out;
}

TemperatureSweepResult run_temperature_sweep(const ScenarioConfig& cfg,
                                             const std::vector<double>& T_values) {
    cfg.validate();
    for (double T : T_values) {
        if (!(T >= 0.0))
            throw InvalidParameterError("run_temperature_sweep: temperatures must be >= 0");
    }
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);

    auto entry_for = [&cfg, &dir](std::size_t idx, double T) {
        ScenarioConfig c = cfg;
        c.system = SystemChoice::GeneralT;
        c.thermo.T = T;
        char sub[32];
        std::snprintf(sub, sizeof(sub), "T_%03zu", idx);
        c.output_dir = (dir / sub).string();

        TemperatureSweepEntry e{};
        e.T = T;
        e.xi_T = c.resolve_xi();
        e.D_eff = effective_diffusion(c.thermo);
        e.dir = c.output_dir;
        const RelaxationResult r = run_relaxation(c);
        e.status = r.report.status;
        e.steps_taken = r.report.steps_taken;
        e.t_half = std::numeric_limits<double>::quiet_NaN();
        const double initial = r.report.diagnostics.front().max_du;
        for (const DiagnosticsRow& row : r.report.diagnostics) {
            if (row.max_du <= 0.5 * initial) {
                e.t_half = row.t;
                break;
            }
        }
        return e;
    };

    // independent runs, one directory each
    std::vector<std::future<TemperatureSweepEntry>> futures;
    futures.reserve(T_values.size());
    for (std::size_t i = 0; i < T_values.size(); ++i) {
        futures.push_back(
            std::async(std::launch::async, entry_for, i, T_values[i]));
    }

    TemperatureSweepResult out;
    out.csv_path = dir / "sweep.csv";
    CsvWriter csv(out.csv_path, "T,xi_T,D_eff,status,steps_taken,t_half");
    for (auto& f : futures) {
        TemperatureSweepEntry e = f.get();
        csv.raw_row(format_double(e.T) + "," + format_double(e.xi_T) + "," +
                    format_double(e.D_eff) + "," + std::string(to_string(e.status)) + "," +
                    std::to_string(e.steps_taken) + "," + format_double(e.t_half));
        out.entries.push_back(std::move(e));
    }
    return out;
}

}  // namespace qthydro
