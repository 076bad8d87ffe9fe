#include "qthydro/reconstruct.hpp"

#include <cmath>

#include "qthydro/errors.hpp"

namespace qthydro {

RhoTheta reconstruct_rho_theta(const FieldState& field, double D_eff,
                               double hbar_over_m) {
    field.validate();
    if (!(D_eff > 0.0))
        throw InvalidParameterError("reconstruct_rho_theta: D_eff must be > 0");
    if (!(hbar_over_m > 0.0))
        throw InvalidParameterError("reconstruct_rho_theta: hbar/m must be > 0");

    const Grid& g = field.grid;
    const bool periodic = g.boundary == BoundaryKind::Periodic;
    const std::size_t n = field.size();
    const std::size_t n_nodes = periodic ? n + 1 : n;  // wrap node closes the domain
    const double h = g.h();

    const auto at = [&](const std::vector<double>& arr, std::size_t j) {
        return arr[periodic ? j % n : j];
    };

    // cumulative trapezoid integrals of u and v from q_min
    std::vector<double> int_u(n_nodes, 0.0), int_v(n_nodes, 0.0);
    for (std::size_t j = 1; j < n_nodes; ++j) {
        int_u[j] = int_u[j - 1] + 0.5 * h * (at(field.u, j - 1) + at(field.u, j));
        int_v[j] = int_v[j - 1] + 0.5 * h * (at(field.v, j - 1) + at(field.v, j));
    }

    std::vector<double> raw(n_nodes);
    for (std::size_t j = 0; j < n_nodes; ++j) {
        const double expo = -int_u[j] / D_eff;
        if (std::abs(expo) > 700.0)
            throw OverflowRangeError(
                "reconstruct_rho_theta: log-density integral outside +-700");
        raw[j] = std::exp(expo);
    }
    double mass = 0.0;
    for (std::size_t j = 1; j < n_nodes; ++j) mass += 0.5 * h * (raw[j - 1] + raw[j]);

    RhoTheta out;
    out.rho.resize(n);
    out.theta.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.rho[j] = raw[j] / mass;
        out.theta[j] = int_v[j] / hbar_over_m;
    }
    return out;
}

}  // namespace qthydro
