#include "qthydro/reference_solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qthydro/block_tridiag.hpp"
#include "qthydro/errors.hpp"

namespace qthydro {

namespace {

constexpr double kCfl = 0.2;
constexpr double kEps4 = 1.0 / 16.0;  // fourth-difference dissipation strength

using linalg::Mat2;
using linalg::Vec2;

double spectral_radius(const Mat2& a) {
    const double tr = a[0] + a[3];
    const double det = a[0] * a[3] - a[1] * a[2];
    const double disc = tr * tr - 4.0 * det;
    if (disc < 0.0) return std::sqrt(std::max(det, 0.0));  // complex pair: |lambda|^2 = det
    const double root = std::sqrt(disc);
    return 0.5 * std::max(std::abs(tr + root), std::abs(tr - root));
}

struct Workspace {
    std::vector<Mat2> a;
    std::vector<Vec2> phi;
    std::vector<double> alpha;
    std::vector<double> du;
    std::vector<double> dv;
};

struct Rates {
    std::vector<double> fu;
    std::vector<double> fv;
    double alpha_max;
};

Rates rhs(const PdeSystem& sys, const FieldState& y, Workspace& ws) {
    const Grid& g = y.grid;
    const std::size_t n = y.size();
    const bool periodic = g.boundary == BoundaryKind::Periodic;
    const double h = g.h();

    ws.a.resize(n);
    ws.phi.resize(n);
    ws.alpha.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const CoeffTable tb = sys.coefficients(y.t, g.q(k), StateVec{y.u[k], y.v[k]});
        const std::array<double, 2> src = sys.source_at(y.t, g.q(k), StateVec{y.u[k], y.v[k]});
        if (tb.A1 == 1.0 && tb.C1 == 0.0 && tb.A2 == 0.0 && tb.C2 == 1.0) {
            ws.a[k] = {tb.B1, tb.D1, tb.B2, tb.D2};
            ws.phi[k] = {src[0], src[1]};
        } else {
            const Mat2 m{tb.A1, tb.C1, tb.A2, tb.C2};
            const Vec2 c0 = linalg::mat2_solve(m, {tb.B1, tb.B2});
            const Vec2 c1 = linalg::mat2_solve(m, {tb.D1, tb.D2});
            ws.a[k] = {c0[0], c1[0], c0[1], c1[1]};
            ws.phi[k] = linalg::mat2_solve(m, {src[0], src[1]});
        }
        ws.alpha[k] = spectral_radius(ws.a[k]);
    }

    const auto idx = [&](std::ptrdiff_t k) -> std::size_t {
        if (periodic) {
            const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(n);
            return static_cast<std::size_t>(((k % m) + m) % m);
        }
        return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(
            k, 0, static_cast<std::ptrdiff_t>(n) - 1));
    };

    Rates r;
    r.fu.assign(n, 0.0);
    r.fv.assign(n, 0.0);
    r.alpha_max = 0.0;
    for (std::size_t k = 0; k < n; ++k) r.alpha_max = std::max(r.alpha_max, ws.alpha[k]);
    if (!std::isfinite(r.alpha_max))
        throw CflViolationError("reference solver: advection speed is not finite");

    const std::size_t lo = periodic ? 0 : 1;
    const std::size_t hi = periodic ? n : n - 1;
    for (std::size_t k = lo; k < hi; ++k) {
        const std::size_t kp = idx(static_cast<std::ptrdiff_t>(k) + 1);
        const std::size_t km = idx(static_cast<std::ptrdiff_t>(k) - 1);
        const double du_q = (y.u[kp] - y.u[km]) / (2.0 * h);
        const double dv_q = (y.v[kp] - y.v[km]) / (2.0 * h);
        const double aloc =
            std::max({ws.alpha[k], ws.alpha[kp], ws.alpha[km]});

        double diss_u, diss_v;
        const bool have_wide =
            periodic || (k >= 2 && k + 2 < n);
        if (have_wide) {
            const std::size_t kpp = idx(static_cast<std::ptrdiff_t>(k) + 2);
            const std::size_t kmm = idx(static_cast<std::ptrdiff_t>(k) - 2);
            diss_u = -kEps4 * aloc *
                     (y.u[kpp] - 4.0 * y.u[kp] + 6.0 * y.u[k] - 4.0 * y.u[km] + y.u[kmm]) / h;
            diss_v = -kEps4 * aloc *
                     (y.v[kpp] - 4.0 * y.v[kp] + 6.0 * y.v[k] - 4.0 * y.v[km] + y.v[kmm]) / h;
        } else {
            // near a far-field boundary fall back to second-difference dissipation
            diss_u = 0.5 * aloc * (y.u[kp] - 2.0 * y.u[k] + y.u[km]) / h;
            diss_v = 0.5 * aloc * (y.v[kp] - 2.0 * y.v[k] + y.v[km]) / h;
        }

        const Mat2& a = ws.a[k];
        r.fu[k] = -(a[0] * du_q + a[1] * dv_q) + ws.phi[k][0] + diss_u;
        r.fv[k] = -(a[2] * du_q + a[3] * dv_q) + ws.phi[k][1] + diss_v;
    }
    return r;
}

}  // namespace

FieldState reference_explicit_solve(const PdeSystem& sys, const FieldState& init,
                                    double t_end) {
    init.validate();
    if (t_end < init.t) throw InvalidParameterError("reference_explicit_solve: t_end < t0");

    FieldState y = init;
    Workspace ws;
    const double h = y.grid.h();
    FieldState stage = y;
    while (y.t < t_end - 1e-12 * std::max(1.0, t_end)) {
        const Rates r0 = rhs(sys, y, ws);
        double dt = t_end - y.t;
        if (r0.alpha_max > 0.0) dt = std::min(dt, kCfl * h / r0.alpha_max);
        if (!(dt > 0.0) || !std::isfinite(dt))
            throw CflViolationError("reference solver: no admissible time step");

        stage.t = y.t + dt;
        for (std::size_t k = 0; k < y.size(); ++k) {
            stage.u[k] = y.u[k] + dt * r0.fu[k];
            stage.v[k] = y.v[k] + dt * r0.fv[k];
        }
        const Rates r1 = rhs(sys, stage, ws);
        for (std::size_t k = 0; k < y.size(); ++k) {
            y.u[k] += 0.5 * dt * (r0.fu[k] + r1.fu[k]);
            y.v[k] += 0.5 * dt * (r0.fv[k] + r1.fv[k]);
            if (!std::isfinite(y.u[k]) || !std::isfinite(y.v[k]))
                throw CflViolationError("reference solver: solution left the finite range");
        }
        y.t += dt;
    }
    y.t = t_end;
    return y;
}

}  // namespace qthydro
