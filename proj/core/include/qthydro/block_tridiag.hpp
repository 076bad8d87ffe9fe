#pragma once

#include <array>
#include <vector>

namespace qthydro::linalg {

using Mat2 = std::array<double, 4>;  ///< row-major 2x2 block
using Vec2 = std::array<double, 2>;

inline Vec2 mat2_apply(const Mat2& m, const Vec2& x) {
    return {m[0] * x[0] + m[1] * x[1], m[2] * x[0] + m[3] * x[1]};
}

/// x = A^{-1} b via Gaussian elimination with partial pivoting.
/// Throws SingularMatrixError when a pivot underflows.
Vec2 mat2_solve(const Mat2& a, const Vec2& b);

/// Solves the block-tridiagonal system with 2x2 blocks
///   lower[k] x_{k-1} + diag[k] x_k + upper[k] x_{k+1} = rhs[k].
/// In cyclic mode lower[0] couples to x_{n-1} and upper[n-1] couples to x_0
/// (handled by a rank-4 Woodbury correction of the open-chain factorization);
/// otherwise lower[0] and upper[n-1] are ignored.
std::vector<Vec2> solve_block_tridiagonal(const std::vector<Mat2>& lower,
                                          const std::vector<Mat2>& diag,
                                          const std::vector<Mat2>& upper,
                                          const std::vector<Vec2>& rhs, bool cyclic);

/// Sup-norm residual of a candidate solution of the same system.
double block_tridiagonal_residual(const std::vector<Mat2>& lower,
                                  const std::vector<Mat2>& diag,
                                  const std::vector<Mat2>& upper,
                                  const std::vector<Vec2>& rhs,
                                  const std::vector<Vec2>& x, bool cyclic);

}  // namespace qthydro::linalg
