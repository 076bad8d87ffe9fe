#pragma once

#include "qthydro/errors.hpp"

namespace qthydro {

/// Physical constants and thermodynamic state of the quantum thermostat.
/// Defaults are reduced units; SI values may be supplied instead.
struct ThermoParams {
    double hbar = 1.0;   ///< action quantum [J s]
    double k_B = 1.0;    ///< entropy unit [J/K]
    double m = 1.0;      ///< particle mass [kg]
    double omega = 1.0;  ///< thermostat mode frequency [1/s]
    double T = 0.0;      ///< Kelvin temperature [K], T = 0 is the cold vacuum

    /// Throws InvalidParameterError unless hbar, k_B, m, omega > 0 and T >= 0.
    void validate() const;
};

/// Dimensionless temperature factors entering the momentum equation.
struct TemperatureFactors {
    double alpha_sq;  ///< sinh^-2(kw/T), phase factor squared; 0 at T = 0
    double upsilon;   ///< coth(kw/T); 1 at T = 0
    double xi_T;      ///< 2 upsilon^2 - 1; 1 at T = 0
};

/// All closed-form effective quantities for one thermostat state.
struct EffectiveQuantities {
    double kappa;     ///< hbar / 2 k_B [K s]
    double T_eff;     ///< effective temperature [K]
    double J_eff;     ///< effective influence [J s]
    double D_eff;     ///< effective self-diffusion coefficient [m^2/s]
    double U_eff;     ///< effective internal energy [J]
    double S_eff;     ///< effective entropy [J/K]
    double alpha_sq;  ///< see TemperatureFactors
    double upsilon;
    double xi_T;
};

/// kappa * omega * coth(kappa omega / T); the exact limit kappa * omega at T = 0.
double effective_temperature(const ThermoParams& p);

/// (hbar/2) * coth(kappa omega / T); hbar/2 at T = 0.
double effective_influence(const ThermoParams& p);

/// Effective influence per unit mass, (hbar/2m) * coth(kappa omega / T).
double effective_diffusion(const ThermoParams& p);

/// -k_B (1 + ln(2 J/hbar)). Implements the printed closed form; the sign
/// makes the value non-positive, so it is reported but not range-checked.
double effective_entropy(const ThermoParams& p);

/// (alpha^2, upsilon, xi_T) = (sinh^-2 x, coth x, 2 coth^2 x - 1), x = kw/T.
TemperatureFactors temperature_factors(const ThermoParams& p);

/// Everything above in one evaluation.
EffectiveQuantities effective_quantities(const ThermoParams& p);

}  // namespace qthydro
