#pragma once

#include <vector>

#include "qthydro/grid.hpp"

namespace qthydro {

struct RhoTheta {
    std::vector<double> rho;    ///< probability density, unit trapezoid mass
    std::vector<double> theta;  ///< phase, zero at q_min
};

/// Inverts the velocity definitions to diagnostic (rho, theta) fields:
/// rho ~ exp(-(1/D_eff) int u dq) normalized to unit trapezoid mass over the
/// domain, theta = (1/hbar_over_m) int v dq anchored at q_min. Throws
/// OverflowRangeError when the log-density integral exceeds +-700.
RhoTheta reconstruct_rho_theta(const FieldState& field, double D_eff,
                               double hbar_over_m);

}  // namespace qthydro
