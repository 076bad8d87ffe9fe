// Shared test utilities: ulp distances, reference systems, a dense linear
// solve oracle and the characteristics-based exact solution used to
// cross-check the implicit scheme.
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "qthydro/block_tridiag.hpp"
#include "qthydro/grid.hpp"
#include "qthydro/pde_system.hpp"

namespace qthydro::testsupport {

inline std::uint64_t ulp_distance(double a, double b) {
    if (a == b) return 0;
    if (!std::isfinite(a) || !std::isfinite(b)) return UINT64_MAX;
    auto key = [](double x) {
        const auto bits = std::bit_cast<std::uint64_t>(x);
        return (bits & 0x8000000000000000ull) ? ~bits : bits | 0x8000000000000000ull;
    };
    const std::uint64_t ka = key(a), kb = key(b);
    return ka > kb ? ka - kb : kb - ka;
}

/// Constant-coefficient decoupled advection u_t + a u_q = 0, v_t + a v_q = 0.
/// The quadratic form has the parabolic double root a.
inline PdeSystem make_constant_advection(double a) {
    PdeSystem sys;
    sys.kind = SystemKind::Custom;
    sys.coeffs = [a](double, double, StateVec) {
        return CoeffTable{1.0, a, 0.0, 0.0, 0.0, 0.0, 1.0, a};
    };
    sys.source = [](double, double, StateVec) { return std::array<double, 2>{0.0, 0.0}; };
    return sys;
}

/// System with zero coefficients everywhere (every direction characteristic).
inline PdeSystem make_zero_system() {
    PdeSystem sys;
    sys.kind = SystemKind::Custom;
    sys.coeffs = [](double, double, StateVec) {
        return CoeffTable{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    };
    sys.source = [](double, double, StateVec) { return std::array<double, 2>{0.0, 0.0}; };
    return sys;
}

/// Dense Gaussian elimination with partial pivoting; the independent check
/// for the block-tridiagonal solver on small systems.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300) throw std::runtime_error("dense_solve: singular");
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

/// Assembles the dense matrix of a (cyclic) block-tridiagonal system.
inline std::vector<std::vector<double>> dense_from_blocks(
    const std::vector<linalg::Mat2>& lower, const std::vector<linalg::Mat2>& diag,
    const std::vector<linalg::Mat2>& upper, bool cyclic) {
    const std::size_t n = diag.size();
    std::vector<std::vector<double>> a(2 * n, std::vector<double>(2 * n, 0.0));
    auto put = [&](std::size_t br, std::size_t bc, const linalg::Mat2& m) {
        a[2 * br][2 * bc] += m[0];
        a[2 * br][2 * bc + 1] += m[1];
        a[2 * br + 1][2 * bc] += m[2];
        a[2 * br + 1][2 * bc + 1] += m[3];
    };
    for (std::size_t k = 0; k < n; ++k) {
        put(k, k, diag[k]);
        if (k > 0) put(k, k - 1, lower[k]);
        if (k + 1 < n) put(k, k + 1, upper[k]);
    }
    if (cyclic) {
        put(0, n - 1, lower[0]);
        put(n - 1, 0, upper[n - 1]);
    }
    return a;
}

/// Parameters of the Gaussian-bump relaxation scenario solved exactly below.
struct BumpScenario {
    double u_inf = 0.5;
    double v_inf = 0.0;
    double epsilon = 0.1;
    double sigma = 1.0;
    double q0 = 0.0;

    double bump(double x) const {
        const double d = x - q0;
        return epsilon * std::exp(-d * d / (2.0 * sigma * sigma));
    }
    double bump_prime(double x) const {
        const double d = x - q0;
        return -(d / (sigma * sigma)) * bump(x);
    }
};

/// Exact pre-shock solution of the homogeneous modified system for bump
/// initial data: w = u + v obeys the inviscid Burgers equation (w constant
/// along dq/dt = w) and u is a density conservatively transported by w, so
/// u(x, t) = u0(x0) / (1 + t w0'(x0)) with x = x0 + w0(x0) t.
inline StateVec exact_modified_bump(const BumpScenario& s, double x, double t) {
    const auto shift = [&](double x0) { return x0 + (s.u_inf + s.v_inf + s.bump(x0)) * t - x; };
    double lo = x - (s.u_inf + s.v_inf + s.epsilon + 0.1) * t - 1.0;
    double hi = x - (s.u_inf + s.v_inf) * t + (std::abs(s.epsilon) + 0.1) * t + 1.0;
    if (shift(lo) > 0.0 || shift(hi) < 0.0) throw std::runtime_error("bracket failure");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (shift(mid) <= 0.0 ? lo : hi) = mid;
    }
    const double x0 = 0.5 * (lo + hi);
    const double jac = 1.0 + t * s.bump_prime(x0);
    const double w = s.u_inf + s.v_inf + s.bump(x0);
    const double u = (s.u_inf + s.bump(x0)) / jac;
    return {u, w - u};
}

inline std::mt19937_64 make_rng(std::uint64_t seed = 0x51ab5eedULL) {
    return std::mt19937_64{seed};
}

/// Snaps to a 2^-20 lattice: sums and small integer combinations of such
/// values stay exactly representable, so coefficient tables built from them
/// carry no input rounding.
inline double dyadic(double x) { return std::round(x * 1048576.0) / 1048576.0; }

}  // namespace qthydro::testsupport
