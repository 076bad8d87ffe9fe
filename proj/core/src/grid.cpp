#include "qthydro/grid.hpp"

#include <cmath>

#include "qthydro/errors.hpp"

namespace qthydro {

void Grid::validate() const {
    if (n_cells < 8) throw InvalidParameterError("Grid: n_cells must be >= 8");
    if (!(q_max > q_min)) throw InvalidParameterError("Grid: q_max must exceed q_min");
    if (!(h() > 0.0) || !std::isfinite(h()))
        throw InvalidParameterError("Grid: spacing h must be positive and finite");
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw InvalidParameterError("Grid: tau must be positive and finite");
}

FieldState FieldState::uniform(const Grid& g, double u_inf, double v_inf, double t) {
    FieldState f;
    f.t = t;
    f.grid = g;
    f.u.assign(g.n_points(), u_inf);
    f.v.assign(g.n_points(), v_inf);
    return f;
}

void FieldState::validate() const {
    grid.validate();
    if (u.size() != grid.n_points() || v.size() != grid.n_points())
        throw InvalidParameterError("FieldState: array lengths must match the grid");
    for (double x : u)
        if (!std::isfinite(x)) throw InvalidParameterError("FieldState: non-finite u entry");
    for (double x : v)
        if (!std::isfinite(x)) throw InvalidParameterError("FieldState: non-finite v entry");
}

}  // namespace qthydro
