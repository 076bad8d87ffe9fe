#pragma once

#include <array>
#include <functional>
#include <string_view>

namespace qthydro {

/// Pointwise state of the two-velocity model.
struct StateVec {
    double u = 0.0;  ///< diffusion velocity [m/s]
    double v = 0.0;  ///< drift velocity [m/s]
};

/// Coefficients of one 2x2 quasilinear first-order system,
///   L1 = A1 u_t + B1 u_q + C1 v_t + D1 v_q
///   L2 = A2 u_t + B2 u_q + C2 v_t + D2 v_q.
struct CoeffTable {
    double A1, B1, C1, D1;
    double A2, B2, C2, D2;

    bool operator==(const CoeffTable&) const = default;
};

enum class SystemKind { Nelson, ModifiedT0, GeneralT, Custom };

std::string_view to_string(SystemKind kind);

/// 2x2 quasilinear system in coefficient form. Immutable after construction;
/// all evaluations are pure.
struct PdeSystem {
    using CoeffFn = std::function<CoeffTable(double t, double q, StateVec)>;
    using SourceFn = std::function<std::array<double, 2>(double t, double q, StateVec)>;
    using PotentialGradient = std::function<double(double q)>;  // (1/m) dU/dq

    SystemKind kind = SystemKind::Custom;
    double xi = 1.0;  ///< temperature factor; meaningful for GeneralT only
    CoeffFn coeffs;
    SourceFn source;
    PotentialGradient potential_gradient;  ///< empty means zero potential

    CoeffTable coefficients(double t, double q, StateVec s) const {
        return coeffs(t, q, s);
    }
    std::array<double, 2> source_at(double t, double q, StateVec s) const {
        return source(t, q, s);
    }
};

/// u_t + v u_q + u v_q = 0;  v_t + v v_q - u u_q = pot(q).
PdeSystem make_nelson(PdeSystem::PotentialGradient pot = {});

/// u_t + (v + 2u) u_q + u v_q = 0;  v_t + v v_q - u u_q = pot(q).
PdeSystem make_modified_t0(PdeSystem::PotentialGradient pot = {});

/// Finite-temperature system: row 1 as in make_modified_t0 with u the
/// effective diffusion velocity; row 2 carries the xi-weighted diffusion
/// pressure term, v_t + v v_q - xi u u_q = -pot(q). Requires xi >= 1;
/// at xi = 1 the coefficient table coincides bitwise with make_modified_t0.
PdeSystem make_general_t(double xi, PdeSystem::PotentialGradient pot = {});

}  // namespace qthydro
