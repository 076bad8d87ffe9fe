#pragma once

#include <cstddef>
#include <vector>

namespace qthydro {

enum class BoundaryKind { Periodic, FarField };

/// Uniform 1-D mesh in q with a fixed time step. Periodic grids carry
/// n_cells points (q_max identified with q_min); far-field grids carry
/// n_cells + 1 points with both ends stored.
struct Grid {
    double q_min = -50.0;
    double q_max = 50.0;
    std::size_t n_cells = 1024;
    double tau = 0.0;  ///< time step [s]
    BoundaryKind boundary = BoundaryKind::Periodic;

    double h() const { return (q_max - q_min) / static_cast<double>(n_cells); }
    std::size_t n_points() const {
        return boundary == BoundaryKind::Periodic ? n_cells : n_cells + 1;
    }
    double q(std::size_t k) const { return q_min + h() * static_cast<double>(k); }

    /// Throws InvalidParameterError unless n_cells >= 8, h > 0 and tau > 0.
    void validate() const;

    bool operator==(const Grid&) const = default;
};

/// Velocity fields (u, v) on one time level.
struct FieldState {
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> v;
    Grid grid;

    std::size_t size() const { return u.size(); }

    static FieldState uniform(const Grid& g, double u_inf, double v_inf, double t = 0.0);

    /// Throws InvalidParameterError on length mismatch or non-finite entries.
    void validate() const;
};

}  // namespace qthydro
