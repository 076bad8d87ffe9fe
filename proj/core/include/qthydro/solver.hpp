#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "qthydro/block_tridiag.hpp"
#include "qthydro/grid.hpp"
#include "qthydro/pde_system.hpp"

namespace qthydro {

struct SolverConfig {
    double picard_tol = 1e-10;    ///< relative sup-norm change between iterates
    int picard_max_iters = 50;
    double blowup_factor = 1e6;   ///< times max(1, initial sup-norm)
    long max_steps = 100000;

    void validate() const;
};

enum class StepOutcome { Converged, Diverged, IterationFailed };

/// One implicit step. On Converged `field` is the accepted next level; on
/// failure it holds the last Picard iterate for post-mortem inspection.
struct StepResult {
    StepOutcome outcome = StepOutcome::Converged;
    FieldState field;
    int picard_iters = 0;
    double residual = 0.0;      ///< relative linear residual of the accepted solve
    double final_change = 0.0;  ///< last relative sup-norm iterate change
};

/// Three-layer implicit step (3 y^{n+1} - 4 y^n + y^{n-1}) / 2 tau
/// + A(y^{n+1}) d_q y^{n+1} = phi, nonlinearity resolved by Picard
/// iteration on the frozen-coefficient linear solve.
/// `blowup_scale` = 0 means max(1, sup-norm of curr).
StepResult step_three_layer(const PdeSystem& sys, const FieldState& prev,
                            const FieldState& curr, const SolverConfig& cfg,
                            double blowup_scale = 0.0);

/// Backward-difference two-layer implicit step producing the second start
/// level the three-layer stencil needs.
StepResult bootstrap_first_step(const PdeSystem& sys, const FieldState& init,
                                const SolverConfig& cfg, double blowup_scale = 0.0);

/// Frozen-coefficient linear solve of the three-layer stencil: given
/// per-point advection blocks and source values, returns the level that
/// satisfies (3 y - 4 curr + prev) / 2 tau + blocks d_q y / 2h = source.
/// Far-field grids hold the end values of curr fixed. `residual` (if non-null)
/// receives the sup-norm residual relative to the rhs scale.
FieldState solve_linear_system(const std::vector<linalg::Mat2>& blocks,
                               const FieldState& prev, const FieldState& curr,
                               const std::vector<std::array<double, 2>>& source,
                               const Grid& grid, double* residual = nullptr);

enum class RunStatus { Completed, Diverged, IterationFailed };

std::string_view to_string(RunStatus status);

/// Reference state the perturbation diagnostics are measured against.
struct Background {
    double u_inf = 0.0;
    double v_inf = 0.0;
};

struct DiagnosticsRow {
    double t;
    double max_du;     ///< sup |u - u_inf|
    double max_dv;     ///< sup |v - v_inf|
    double l2_du;      ///< discrete L2 norm of u - u_inf
    double l2_dv;
    double centroid;   ///< |u - u_inf|-weighted position (domain center if flat)
    int picard_iters;  ///< iterations spent producing this level (0 at t = 0)
};

struct RunReport {
    RunStatus status = RunStatus::Completed;
    std::vector<FieldState> snapshots;  ///< at the requested times, sorted
    std::vector<DiagnosticsRow> diagnostics;  ///< one row per time level
    long steps_taken = 0;
    Background background;
    int max_picard_iters = 0;
};

/// Marches the Cauchy problem from init: one bootstrap step, then the
/// three-layer scheme until the last snapshot time (or max_steps when no
/// snapshot times are given), but at least min_steps. Snapshots falling
/// between levels are linearly interpolated in time. Divergence is reported
/// in the status, not thrown.
RunReport run(const PdeSystem& sys, const FieldState& init, const SolverConfig& cfg,
              std::vector<double> snapshot_times,
              std::optional<Background> background = std::nullopt, long min_steps = 0);

}  // namespace qthydro
