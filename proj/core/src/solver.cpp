#include "qthydro/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qthydro/errors.hpp"

namespace qthydro {

using linalg::Mat2;
using linalg::Vec2;

namespace {

constexpr double kResidualTol = 1e-10;

double sup_norm(const FieldState& f) {
    double m = 0.0;
    for (double x : f.u) m = std::max(m, std::abs(x));
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

/// Advection block and source of one row in advective form. Rows with
/// non-unit time-derivative coefficients are premultiplied by the inverse of
/// M = [[A1, C1], [A2, C2]].
struct PointSystem {
    Mat2 advection;
    Vec2 source;
};

PointSystem advective_form(const PdeSystem& sys, double t, double q, StateVec s) {
    const CoeffTable tb = sys.coefficients(t, q, s);
    const std::array<double, 2> src = sys.source_at(t, q, s);
    if (tb.A1 == 1.0 && tb.C1 == 0.0 && tb.A2 == 0.0 && tb.C2 == 1.0) {
        return {{tb.B1, tb.D1, tb.B2, tb.D2}, {src[0], src[1]}};
    }
    const Mat2 m{tb.A1, tb.C1, tb.A2, tb.C2};
    const Vec2 col0 = linalg::mat2_solve(m, {tb.B1, tb.B2});
    const Vec2 col1 = linalg::mat2_solve(m, {tb.D1, tb.D2});
    const Vec2 phi = linalg::mat2_solve(m, {src[0], src[1]});
    return {{col0[0], col1[0], col0[1], col1[1]}, phi};
}

struct FrozenSolve {
    std::vector<Vec2> y;
    double residual_rel;
};

/// Solves (time_coeff I + blocks d_q / 2h) y = rhs on the grid. Periodic
/// grids wrap; far-field grids hold y at both ends to the supplied values.
FrozenSolve solve_frozen(const std::vector<Mat2>& blocks, double time_coeff,
                         const std::vector<Vec2>& rhs, const Grid& grid,
                         Vec2 bc_lo, Vec2 bc_hi) {
    const double coef = 1.0 / (2.0 * grid.h());
    const Mat2 diag_block{time_coeff, 0.0, 0.0, time_coeff};
    const std::size_t n = rhs.size();

    if (grid.boundary == BoundaryKind::Periodic) {
        std::vector<Mat2> lower(n), diag(n, diag_block), upper(n);
        for (std::size_t k = 0; k < n; ++k) {
            const Mat2& a = blocks[k];
            upper[k] = {coef * a[0], coef * a[1], coef * a[2], coef * a[3]};
            lower[k] = {-upper[k][0], -upper[k][1], -upper[k][2], -upper[k][3]};
        }
        std::vector<Vec2> y = linalg::solve_block_tridiagonal(lower, diag, upper, rhs, true);
        double scale = 0.0;
        for (const Vec2& r : rhs) scale = std::max({scale, std::abs(r[0]), std::abs(r[1])});
        const double res = linalg::block_tridiagonal_residual(lower, diag, upper, rhs, y, true);
        return {std::move(y), scale > 0.0 ? res / scale : res};
    }

    // Far field: unknowns are the interior points 1 .. n-2.
    const std::size_t m = n - 2;
    std::vector<Mat2> lower(m), diag(m, diag_block), upper(m);
    std::vector<Vec2> b(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t k = j + 1;
        const Mat2& a = blocks[k];
        upper[j] = {coef * a[0], coef * a[1], coef * a[2], coef * a[3]};
        lower[j] = {-upper[j][0], -upper[j][1], -upper[j][2], -upper[j][3]};
        b[j] = rhs[k];
    }
    {  // fold the pinned boundary values into the right-hand side
        const Vec2 lo = linalg::mat2_apply(lower[0], bc_lo);
        b[0] = {b[0][0] - lo[0], b[0][1] - lo[1]};
        const Vec2 hi = linalg::mat2_apply(upper[m - 1], bc_hi);
        b[m - 1] = {b[m - 1][0] - hi[0], b[m - 1][1] - hi[1]};
    }
    std::vector<Vec2> yi = linalg::solve_block_tridiagonal(lower, diag, upper, b, false);
    double scale = 0.0;
    for (const Vec2& r : b) scale = std::max({scale, std::abs(r[0]), std::abs(r[1])});
    const double res = linalg::block_tridiagonal_residual(lower, diag, upper, b, yi, false);

    std::vector<Vec2> y(n);
    y[0] = bc_lo;
    y[n - 1] = bc_hi;
    for (std::size_t j = 0; j < m; ++j) y[j + 1] = yi[j];
    return {std::move(y), scale > 0.0 ? res / scale : res};
}

FieldState to_field(std::vector<Vec2> y, const Grid& grid, double t) {
    FieldState f;
    f.t = t;
    f.grid = grid;
    f.u.resize(y.size());
    f.v.resize(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) {
        f.u[k] = y[k][0];
        f.v[k] = y[k][1];
    }
    return f;
}

/// Shared Picard loop of the two implicit steps. rhs_time holds the
/// time-stencil part of the right-hand side; the source of sys is added at
/// the current iterate each sweep.
StepResult picard_solve(const PdeSystem& sys, const std::vector<Vec2>& rhs_time,
                        double time_coeff, const FieldState& bc_level, double t_next,
                        FieldState guess, const SolverConfig& cfg, double blowup_scale) {
    const Grid& grid = bc_level.grid;
    const std::size_t n = grid.n_points();
    const double threshold = cfg.blowup_factor * blowup_scale;
    const Vec2 bc_lo{bc_level.u.front(), bc_level.v.front()};
    const Vec2 bc_hi{bc_level.u.back(), bc_level.v.back()};

    StepResult out;
    std::vector<Mat2> blocks(n);
    std::vector<Vec2> rhs(n);
    for (int it = 1; it <= cfg.picard_max_iters; ++it) {
        for (std::size_t k = 0; k < n; ++k) {
            const PointSystem ps = advective_form(
                sys, t_next, grid.q(k), StateVec{guess.u[k], guess.v[k]});
            blocks[k] = ps.advection;
            rhs[k] = {rhs_time[k][0] + ps.source[0], rhs_time[k][1] + ps.source[1]};
        }
        FrozenSolve fs = solve_frozen(blocks, time_coeff, rhs, grid, bc_lo, bc_hi);
        FieldState y = to_field(std::move(fs.y), grid, t_next);

        const double y_sup = sup_norm(y);
        if (!(y_sup <= threshold)) {
            out.outcome = StepOutcome::Diverged;
            out.field = std::move(y);
            out.picard_iters = it;
            return out;
        }
        double change = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            change = std::max(change, std::abs(y.u[k] - guess.u[k]));
            change = std::max(change, std::abs(y.v[k] - guess.v[k]));
        }
        change /= std::max(1.0, y_sup);
        guess = std::move(y);
        if (change <= cfg.picard_tol) {
            if (fs.residual_rel > kResidualTol) {
                throw SingularMatrixError(
                    "linear solve residual exceeds tolerance; the frozen system is "
                    "too ill-conditioned for this tau/h");
            }
            out.outcome = StepOutcome::Converged;
            out.field = std::move(guess);
            out.picard_iters = it;
            out.residual = fs.residual_rel;
            out.final_change = change;
            return out;
        }
        out.final_change = change;
    }
    out.outcome = StepOutcome::IterationFailed;
    out.field = std::move(guess);
    out.picard_iters = cfg.picard_max_iters;
    return out;
}

std::vector<Vec2> three_layer_rhs(const FieldState& prev, const FieldState& curr) {
    const double inv2tau = 1.0 / (2.0 * curr.grid.tau);
    std::vector<Vec2> rhs(curr.size());
    for (std::size_t k = 0; k < rhs.size(); ++k) {
        rhs[k] = {(4.0 * curr.u[k] - prev.u[k]) * inv2tau,
                  (4.0 * curr.v[k] - prev.v[k]) * inv2tau};
    }
    return rhs;
}

}  // namespace

void SolverConfig::validate() const {
    if (!(picard_tol > 0.0)) throw InvalidParameterError("SolverConfig: picard_tol must be > 0");
    if (picard_max_iters < 1)
        throw InvalidParameterError("SolverConfig: picard_max_iters must be >= 1");
    if (!(blowup_factor > 1.0))
        throw InvalidParameterError("SolverConfig: blowup_factor must be > 1");
    if (max_steps < 1) throw InvalidParameterError("SolverConfig: max_steps must be >= 1");
}

StepResult step_three_layer(const PdeSystem& sys, const FieldState& prev,
                            const FieldState& curr, const SolverConfig& cfg,
                            double blowup_scale) {
    cfg.validate();
    prev.validate();
    curr.validate();
    if (!(prev.grid == curr.grid))
        throw InvalidParameterError("step_three_layer: levels must share one grid");
    const double tau = curr.grid.tau;
    if (std::abs(curr.t - prev.t - tau) > 1e-9 * tau)
        throw InvalidParameterError("step_three_layer: levels must be tau apart");

    if (blowup_scale <= 0.0) blowup_scale = std::max(1.0, sup_norm(curr));
    FieldState guess = curr;
    for (std::size_t k = 0; k < guess.size(); ++k) {
        guess.u[k] = 2.0 * curr.u[k] - prev.u[k];
        guess.v[k] = 2.0 * curr.v[k] - prev.v[k];
    }
    return picard_solve(sys, three_layer_rhs(prev, curr), 3.0 / (2.0 * tau), curr,
                        curr.t + tau, std::move(guess), cfg, blowup_scale);
}

StepResult bootstrap_first_step(const PdeSystem& sys, const FieldState& init,
                                const SolverConfig& cfg, double blowup_scale) {
    cfg.validate();
    init.validate();
    const double tau = init.grid.tau;
    if (blowup_scale <= 0.0) blowup_scale = std::max(1.0, sup_norm(init));
    std::vector<Vec2> rhs(init.size());
    for (std::size_t k = 0; k < rhs.size(); ++k) {
        rhs[k] = {init.u[k] / tau, init.v[k] / tau};
    }
    return picard_solve(sys, rhs, 1.0 / tau, init, init.t + tau, init, cfg, blowup_scale);
}

FieldState solve_linear_system(const std::vector<Mat2>& blocks, const FieldState& prev,
                               const FieldState& curr,
                               const std::vector<std::array<double, 2>>& source,
                               const Grid& grid, double* residual) {
    if (blocks.size() != grid.n_points() || source.size() != grid.n_points())
        throw InvalidParameterError("solve_linear_system: per-point array size mismatch");
    std::vector<Vec2> rhs = three_layer_rhs(prev, curr);
    for (std::size_t k = 0; k < rhs.size(); ++k) {
        rhs[k] = {rhs[k][0] + source[k][0], rhs[k][1] + source[k][1]};
    }
    FrozenSolve fs = solve_frozen(blocks, 3.0 / (2.0 * grid.tau), rhs, grid,
                                  {curr.u.front(), curr.v.front()},
                                  {curr.u.back(), curr.v.back()});
    if (residual) *residual = fs.residual_rel;
    return to_field(std::move(fs.y), grid, curr.t + grid.tau);
}

std::string_view to_string(RunStatus status) {
    switch (status) {
        case RunStatus::Completed: return "completed";
        case RunStatus::Diverged: return "diverged";
        case RunStatus::IterationFailed: return "iteration-failed";
    }
    return "unknown";
}

namespace {

DiagnosticsRow diagnostics_row(const FieldState& f, const Background& bg, int iters) {
    DiagnosticsRow row{};
    row.t = f.t;
    row.picard_iters = iters;
    const double h = f.grid.h();
    double sum_abs = 0.0, sum_q = 0.0, sum2u = 0.0, sum2v = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double du = f.u[k] - bg.u_inf;
        const double dv = f.v[k] - bg.v_inf;
        row.max_du = std::max(row.max_du, std::abs(du));
        row.max_dv = std::max(row.max_dv, std::abs(dv));
        sum2u += du * du;
        sum2v += dv * dv;
        sum_abs += std::abs(du);
        sum_q += f.grid.q(k) * std::abs(du);
    }
    row.l2_du = std::sqrt(h * sum2u);
    row.l2_dv = std::sqrt(h * sum2v);
    row.centroid = sum_abs > 0.0 ? sum_q / sum_abs
                                 : 0.5 * (f.grid.q_min + f.grid.q_max);
    return row;
}

FieldState interpolate_level(const FieldState& a, const FieldState& b, double ts) {
    const double w = (ts - a.t) / (b.t - a.t);
    FieldState f = a;
    f.t = ts;
    for (std::size_t k = 0; k < f.size(); ++k) {
        f.u[k] = (1.0 - w) * a.u[k] + w * b.u[k];
        f.v[k] = (1.0 - w) * a.v[k] + w * b.v[k];
    }
    return f;
}

}  // namespace

RunReport run(const PdeSystem& sys, const FieldState& init, const SolverConfig& cfg,
              std::vector<double> snapshot_times, std::optional<Background> background,
              long min_steps) {
    init.validate();
    cfg.validate();
    const double tau = init.grid.tau;

    std::sort(snapshot_times.begin(), snapshot_times.end());
    snapshot_times.erase(std::unique(snapshot_times.begin(), snapshot_times.end(),
                                     [](double a, double b) {
                                         return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b));
                                     }),
                         snapshot_times.end());
    const double horizon_cap = static_cast<double>(cfg.max_steps) * tau;
    for (double ts : snapshot_times) {
        if (ts < -1e-12 || ts > horizon_cap * (1.0 + 1e-12))
            throw InvalidParameterError("run: snapshot time outside [0, max_steps * tau]");
    }

    RunReport rep;
    rep.background = background.value_or(Background{init.u.front(), init.v.front()});

    long n_steps = cfg.max_steps;
    if (!snapshot_times.empty()) {
        n_steps = std::min<long>(
            cfg.max_steps,
            static_cast<long>(std::ceil(snapshot_times.back() / tau - 1e-9)));
        n_steps = std::max<long>(n_steps, 0);
    }
    n_steps = std::min<long>(cfg.max_steps, std::max<long>(n_steps, min_steps));

    rep.diagnostics.push_back(diagnostics_row(init, rep.background, 0));
    std::size_t next_snap = 0;
    while (next_snap < snapshot_times.size() && snapshot_times[next_snap] <= 1e-12) {
        FieldState s = init;
        s.t = snapshot_times[next_snap];
        rep.snapshots.push_back(std::move(s));
        ++next_snap;
    }
    if (n_steps == 0) return rep;

    const double scale0 = std::max(1.0, sup_norm(init));
    const auto record_level = [&](const FieldState& prev_level, const FieldState& level,
                                  int iters) {
        rep.diagnostics.push_back(diagnostics_row(level, rep.background, iters));
        rep.max_picard_iters = std::max(rep.max_picard_iters, iters);
        while (next_snap < snapshot_times.size() &&
               snapshot_times[next_snap] <= level.t + 1e-9 * tau) {
            const double ts = snapshot_times[next_snap];
            if (std::abs(ts - level.t) <= 1e-9 * tau) {
                FieldState s = level;
                s.t = ts;
                rep.snapshots.push_back(std::move(s));
            } else {
                rep.snapshots.push_back(interpolate_level(prev_level, level, ts));
            }
            ++next_snap;
        }
    };

    // A Picard failure whose final iterate has clearly outgrown the initial
    // field scale is the blow-up signature; a failure at the original scale
    // is a genuine iteration breakdown.
    const auto failure_status = [&](const StepResult& sr) {
        if (sr.outcome == StepOutcome::Diverged) return RunStatus::Diverged;
        return sup_norm(sr.field) > 2.0 * scale0 ? RunStatus::Diverged
                                                 : RunStatus::IterationFailed;
    };

    StepResult sr = bootstrap_first_step(sys, init, cfg, scale0);
    if (sr.outcome != StepOutcome::Converged) {
        rep.status = failure_status(sr);
        return rep;
    }
    rep.steps_taken = 1;
    sr.field.t = tau;  // pin level times to exact multiples of tau
    record_level(init, sr.field, sr.picard_iters);

    FieldState prev = init;
    FieldState curr = std::move(sr.field);
    for (long step = 2; step <= n_steps; ++step) {
        StepResult next = step_three_layer(sys, prev, curr, cfg, scale0);
        if (next.outcome != StepOutcome::Converged) {
            rep.status = failure_status(next);
            return rep;
        }
        next.field.t = static_cast<double>(step) * tau;
        rep.steps_taken = step;
        record_level(curr, next.field, next.picard_iters);
        prev = std::move(curr);
        curr = std::move(next.field);
    }
    rep.status = RunStatus::Completed;
    return rep;
}

}  // namespace qthydro
