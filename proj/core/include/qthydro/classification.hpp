#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qthydro/grid.hpp"
#include "qthydro/pde_system.hpp"

namespace qthydro {

enum class PdeType { Elliptic, Parabolic, Hyperbolic, Degenerate };

std::string_view to_string(PdeType type);

/// Pointwise type of a 2x2 quasilinear system, from the quadratic form
/// a t_l^2 - 2 b t_l q_l + c q_l^2 = 0 built out of the bracket products
/// a = [BD], 2b = [AD] + [BC], c = [AC], [XY] = X1 Y2 - X2 Y1.
struct Classification {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double discriminant = 0.0;  ///< b^2 - ac
    PdeType type_tag = PdeType::Degenerate;
    int n_slopes = 0;                        ///< 0 (elliptic), 1 (parabolic), 2 (hyperbolic)
    std::array<double, 2> char_slopes{};     ///< characteristic slopes dq/dt (t_l = 1)
};

/// Relative tolerance of the parabolic band: |b^2 - ac| <= tol * max(1, b^2 + |ac|).
inline constexpr double kDiscriminantTol = 1e-12;

Classification classify_table(const CoeffTable& table);

Classification classify(const PdeSystem& sys, double t, double q, StateVec s);

/// Transport speed dq/dt of the single characteristic family of a parabolic
/// system. Exactly u + v for the ModifiedT0/GeneralT families; the double
/// root of the quadratic form otherwise. Throws WrongTypeError when the
/// system is not parabolic at s.
double characteristic_speed(const PdeSystem& sys, StateVec s);

struct FieldClassificationSummary {
    std::size_t n_elliptic = 0;
    std::size_t n_parabolic = 0;
    std::size_t n_hyperbolic = 0;
    std::size_t n_degenerate = 0;
    double disc_min = 0.0;
    double disc_max = 0.0;
};

struct FieldClassification {
    std::vector<Classification> points;
    FieldClassificationSummary summary;
};

/// Classification at every grid point of a field, with aggregate counts.
FieldClassification classify_field(const PdeSystem& sys, const FieldState& field);

}  // namespace qthydro
