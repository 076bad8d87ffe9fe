#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace qthydro {

/// Fourier-mode query for the scheme's scalar amplification analysis.
struct AmplificationQuery {
    double a;      ///< frozen advection speed
    double gamma;  ///< tau / h
    double theta;  ///< Fourier phase in [0, 2pi)
};

/// Roots of mu eta^2 - 4 eta + 1 = 0, larger modulus first. `degenerate`
/// marks the linear case mu = 0, where the single root 1/4 is returned twice.
struct AmplificationRoots {
    std::complex<double> eta1;
    std::complex<double> eta2;
    bool degenerate = false;
};

AmplificationRoots amplification_roots(std::complex<double> mu);

struct StabilityVerdict {
    bool stable;
    double max_root_modulus;
    std::complex<double> mu;
};

/// Tolerance admitting the neutral mode |eta| = 1 at mu = 3.
inline constexpr double kStabilityTol = 1e-12;

/// Evaluates mu = 3 + 2 a gamma i sin(theta) and tests max|eta| <= 1 + tol.
StabilityVerdict is_stable(const AmplificationQuery& q);

/// Point of the stability boundary r = 4 cos(phi) - cos(2 phi),
/// s = 4 sin(phi) - sin(2 phi).
struct GammaCurvePoint {
    double phi;
    double r;
    double s;
};

GammaCurvePoint gamma_curve(double phi);

enum class RegionResult { InsideGamma, OutsideGamma, OnGamma };

std::string_view to_string(RegionResult r);

/// Winding-number membership of mu against the boundary curve sampled at
/// n_samples parameters (n_samples >= 64). Points closer to the sampled
/// polygon than 1e-9 (1 + |mu|) report OnGamma.
RegionResult curve_region_check(std::complex<double> mu, std::size_t n_samples);

}  // namespace qthydro
