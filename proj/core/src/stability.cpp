#include "qthydro/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qthydro/errors.hpp"

namespace qthydro {

AmplificationRoots amplification_roots(std::complex<double> mu) {
    AmplificationRoots out;
    if (mu == 0.0) {
        // -4 eta + 1 = 0
        out.eta1 = out.eta2 = 0.25;
        out.degenerate = true;
        return out;
    }
    // mu eta^2 - 4 eta + 1: q = 2 + sqrt(4 - mu) picks the sign that keeps
    // |q| away from cancellation; eta = q / mu and 1 / q by Vieta.
    std::complex<double> sq = std::sqrt(4.0 - mu);
    if (sq.real() < 0.0) sq = -sq;
    const std::complex<double> qv = 2.0 + sq;
    std::complex<double> r1 = qv / mu;
    std::complex<double> r2 = 1.0 / qv;
    if (std::abs(r1) < std::abs(r2)) std::swap(r1, r2);
    out.eta1 = r1;
    out.eta2 = r2;
    return out;
}

StabilityVerdict is_stable(const AmplificationQuery& q) {
    if (!(q.gamma > 0.0)) throw InvalidParameterError("is_stable: gamma must be > 0");
    const std::complex<double> mu(3.0, 2.0 * q.a * q.gamma * std::sin(q.theta));
    const AmplificationRoots roots = amplification_roots(mu);
    const double m = std::max(std::abs(roots.eta1), std::abs(roots.eta2));
    return {m <= 1.0 + kStabilityTol, m, mu};
}

GammaCurvePoint gamma_curve(double phi) {
    return {phi, 4.0 * std::cos(phi) - std::cos(2.0 * phi),
            4.0 * std::sin(phi) - std::sin(2.0 * phi)};
}

std::string_view to_string(RegionResult r) {
    switch (r) {
        case RegionResult::InsideGamma: return "inside";
        case RegionResult::OutsideGamma: return "outside";
        case RegionResult::OnGamma: return "on-curve";
    }
    return "unknown";
}

namespace {

double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
    const double dx = bx - ax, dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double s = 0.0;
    if (len2 > 0.0) s = std::clamp(((px - ax) * dx + (py - ay) * dy) / len2, 0.0, 1.0);
    const double cx = ax + s * dx - px;
    const double cy = ay + s * dy - py;
    return std::hypot(cx, cy);
}

}  // namespace

RegionResult curve_region_check(std::complex<double> mu, std::size_t n_samples) {
    if (n_samples < 64)
        throw InvalidParameterError("curve_region_check: n_samples must be >= 64");

    std::vector<double> rs(n_samples), ss(n_samples);
    for (std::size_t j = 0; j < n_samples; ++j) {
        const double phi =
            2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_samples);
        const GammaCurvePoint p = gamma_curve(phi);
        rs[j] = p.r;
        ss[j] = p.s;
    }

    const double px = mu.real(), py = mu.imag();
    const double on_tol = 1e-9 * (1.0 + std::abs(mu));
    double dist = std::numeric_limits<double>::infinity();
    int wn = 0;
    for (std::size_t j = 0; j < n_samples; ++j) {
        const std::size_t jn = (j + 1) % n_samples;
        const double ax = rs[j], ay = ss[j], bx = rs[jn], by = ss[jn];
        dist = std::min(dist, segment_distance(px, py, ax, ay, bx, by));
        // crossing-based winding number
        const double left = (bx - ax) * (py - ay) - (px - ax) * (by - ay);
        if (ay <= py) {
            if (by > py && left > 0.0) ++wn;
        } else if (by <= py && left < 0.0) {
            --wn;
        }
    }
    if (dist < on_tol) return RegionResult::OnGamma;
    return wn != 0 ? RegionResult::InsideGamma : RegionResult::OutsideGamma;
}

}  // namespace qthydro
