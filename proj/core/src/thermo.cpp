#include "qthydro/thermo.hpp"

#include <cmath>

namespace qthydro {

namespace {

// coth(x) and sinh^-2(x) for x > 0 through w = exp(-2x):
//   coth(x)    = (1 + w) / (1 - w)
//   sinh^-2(x) = 4 w / (1 - w)^2
// with 1 - w evaluated as -expm1(-2x). Accurate for the whole range: no
// overflow at large x (w underflows to 0, coth -> 1 + 2w), and no
// cancellation at small x where expm1 keeps 1 - w to full precision.
struct CothPair {
    double coth;
    double inv_sinh_sq;
};

CothPair coth_pair(double x) {
    const double w = std::exp(-2.0 * x);
    const double om = -std::expm1(-2.0 * x);  // 1 - w
    return {(1.0 + w) / om, 4.0 * w / (om * om)};
}

double thermostat_argument(const ThermoParams& p) {
    const double kappa = p.hbar / (2.0 * p.k_B);
    return kappa * p.omega / p.T;  // callers handle T == 0 separately
}

}  // namespace

void ThermoParams::validate() const {
    if (!(hbar > 0.0)) throw InvalidParameterError("ThermoParams: hbar must be > 0");
    if (!(k_B > 0.0)) throw InvalidParameterError("ThermoParams: k_B must be > 0");
    if (!(m > 0.0)) throw InvalidParameterError("ThermoParams: m must be > 0");
    if (!(omega > 0.0)) throw InvalidParameterError("ThermoParams: omega must be > 0");
    if (!(T >= 0.0)) throw InvalidParameterError("ThermoParams: T must be >= 0");
}

double effective_temperature(const ThermoParams& p) {
    p.validate();
    const double kappa = p.hbar / (2.0 * p.k_B);
    if (p.T == 0.0) return kappa * p.omega;
    return kappa * p.omega * coth_pair(thermostat_argument(p)).coth;
}

double effective_influence(const ThermoParams& p) {
    p.validate();
    if (p.T == 0.0) return 0.5 * p.hbar;
    return 0.5 * p.hbar * coth_pair(thermostat_argument(p)).coth;
}

double effective_diffusion(const ThermoParams& p) {
    return effective_influence(p) / p.m;
}

double effective_entropy(const ThermoParams& p) {
    const double j = effective_influence(p);
    return -p.k_B * (1.0 + std::log(2.0 * j / p.hbar));
}

TemperatureFactors temperature_factors(const ThermoParams& p) {
    p.validate();
    if (p.T == 0.0) return {0.0, 1.0, 1.0};
    const CothPair c = coth_pair(thermostat_argument(p));
    return {c.inv_sinh_sq, c.coth, 2.0 * c.coth * c.coth - 1.0};
}

EffectiveQuantities effective_quantities(const ThermoParams& p) {
    p.validate();
    EffectiveQuantities q{};
    q.kappa = p.hbar / (2.0 * p.k_B);
    const TemperatureFactors f = temperature_factors(p);
    q.alpha_sq = f.alpha_sq;
    q.upsilon = f.upsilon;
    q.xi_T = f.xi_T;
    q.J_eff = 0.5 * p.hbar * f.upsilon;
    q.T_eff = q.kappa * p.omega * f.upsilon;
    q.D_eff = q.J_eff / p.m;
    q.U_eff = p.omega * q.J_eff;
    q.S_eff = -p.k_B * (1.0 + std::log(2.0 * q.J_eff / p.hbar));
    return q;
}

}  // namespace qthydro
