#pragma once

#include "qthydro/grid.hpp"
#include "qthydro/pde_system.hpp"

namespace qthydro {

/// Independent explicit cross-check for the implicit scheme: method of lines
/// with a two-stage (Heun) integrator, central differences and local
/// Lax-Friedrichs scalar dissipation in fourth-difference form, advanced at
/// CFL <= 0.2. Intended for smooth short-horizon problems only.
/// Throws CflViolationError when no admissible time step exists.
FieldState reference_explicit_solve(const PdeSystem& sys, const FieldState& init,
                                    double t_end);

}  // namespace qthydro
