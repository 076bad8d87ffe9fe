#include "qthydro/block_tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "qthydro/errors.hpp"

namespace qthydro::linalg {

namespace {

constexpr double kPivotFloor = 1e-300;

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 mat2_sub(const Mat2& a, const Mat2& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

Vec2 vec2_sub(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }

/// LU of a 2x2 with partial pivoting, reused across several right-hand sides.
struct Lu2 {
    double u00, u01, u11, l10;
    bool swapped;

    static Lu2 factor(const Mat2& a) {
        Lu2 f{};
        double m00 = a[0], m01 = a[1], m10 = a[2], m11 = a[3];
        f.swapped = std::abs(m10) > std::abs(m00);
        if (f.swapped) {
            std::swap(m00, m10);
            std::swap(m01, m11);
        }
        if (std::abs(m00) < kPivotFloor)
            throw SingularMatrixError("block pivot underflow in 2x2 factorization");
        f.u00 = m00;
        f.u01 = m01;
        f.l10 = m10 / m00;
        f.u11 = m11 - f.l10 * m01;
        if (std::abs(f.u11) < kPivotFloor)
            throw SingularMatrixError("block pivot underflow in 2x2 factorization");
        return f;
    }

    Vec2 solve(Vec2 b) const {
        if (swapped) std::swap(b[0], b[1]);
        const double y1 = b[1] - l10 * b[0];
        const double x1 = y1 / u11;
        const double x0 = (b[0] - u01 * x1) / u00;
        return {x0, x1};
    }

    /// Solves A X = B columnwise for a 2x2 right-hand side.
    Mat2 solve_mat(const Mat2& b) const {
        const Vec2 c0 = solve({b[0], b[2]});
        const Vec2 c1 = solve({b[1], b[3]});
        return {c0[0], c1[0], c0[1], c1[1]};
    }
};

/// Open-chain block-Thomas factorization; solves for several right-hand
/// sides without refactoring.
class OpenChain {
public:
    OpenChain(const std::vector<Mat2>& lower, const std::vector<Mat2>& diag,
              const std::vector<Mat2>& upper)
        : lower_(lower), upper_(upper) {
        const std::size_t n = diag.size();
        c_.resize(n);
        lus_.reserve(n);
        lus_.push_back(Lu2::factor(diag[0]));
        c_[0] = lus_[0].solve_mat(upper[0]);
        for (std::size_t k = 1; k < n; ++k) {
            const Mat2 denom = mat2_sub(diag[k], mat2_mul(lower[k], c_[k - 1]));
            lus_.push_back(Lu2::factor(denom));
            if (k + 1 < n) c_[k] = lus_[k].solve_mat(upper[k]);
        }
    }

    std::vector<Vec2> solve(const std::vector<Vec2>& rhs) const {
        const std::size_t n = rhs.size();
        std::vector<Vec2> x(n);
        x[0] = lus_[0].solve(rhs[0]);
        for (std::size_t k = 1; k < n; ++k) {
            x[k] = lus_[k].solve(vec2_sub(rhs[k], mat2_apply(lower_[k], x[k - 1])));
        }
        for (std::size_t k = n - 1; k-- > 0;) {
            x[k] = vec2_sub(x[k], mat2_apply(c_[k], x[k + 1]));
        }
        return x;
    }

private:
    const std::vector<Mat2>& lower_;
    const std::vector<Mat2>& upper_;
    std::vector<Mat2> c_;  ///< premultiplied D^-1 U blocks
    std::vector<Lu2> lus_;
};

/// Dense Gaussian elimination with partial pivoting for the 4x4
/// Woodbury capacitance system.
std::array<double, 4> solve4(std::array<std::array<double, 4>, 4> a,
                             std::array<double, 4> b) {
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < kPivotFloor)
            throw SingularMatrixError("singular capacitance matrix in cyclic solve");
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < 4; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::array<double, 4> x{};
    for (int r = 3; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < 4; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

}  // namespace

Vec2 mat2_solve(const Mat2& a, const Vec2& b) { return Lu2::factor(a).solve(b); }

std::vector<Vec2> solve_block_tridiagonal(const std::vector<Mat2>& lower,
                                          const std::vector<Mat2>& diag,
                                          const std::vector<Mat2>& upper,
                                          const std::vector<Vec2>& rhs, bool cyclic) {
    const std::size_t n = diag.size();
    if (n == 0 || lower.size() != n || upper.size() != n || rhs.size() != n)
        throw InvalidParameterError("solve_block_tridiagonal: inconsistent block counts");

    OpenChain chain(lower, diag, upper);
    std::vector<Vec2> x = chain.solve(rhs);
    if (!cyclic || n < 3) return x;

    // Wrap blocks as a rank-4 update A = T + U V^T: U carries unit columns in
    // block rows 0 and n-1, V^T carries lower[0] at block column n-1 and
    // upper[n-1] at block column 0.
    std::array<std::vector<Vec2>, 4> z;
    for (int j = 0; j < 4; ++j) {
        std::vector<Vec2> e(n, Vec2{0.0, 0.0});
        if (j < 2)
            e[0][j] = 1.0;
        else
            e[n - 1][j - 2] = 1.0;
        z[j] = chain.solve(e);
    }

    const auto vt_dot = [&](const std::vector<Vec2>& y) {
        const Vec2 top = mat2_apply(lower[0], y[n - 1]);
        const Vec2 bot = mat2_apply(upper[n - 1], y[0]);
        return std::array<double, 4>{top[0], top[1], bot[0], bot[1]};
    };

    std::array<std::array<double, 4>, 4> cap{};
    for (int j = 0; j < 4; ++j) {
        const std::array<double, 4> col = vt_dot(z[j]);
        for (int i = 0; i < 4; ++i) cap[i][j] = col[i] + (i == j ? 1.0 : 0.0);
    }
    const std::array<double, 4> y = solve4(cap, vt_dot(x));
    for (std::size_t k = 0; k < n; ++k) {
        for (int i = 0; i < 2; ++i) {
            x[k][i] -= z[0][k][i] * y[0] + z[1][k][i] * y[1] + z[2][k][i] * y[2] +
                       z[3][k][i] * y[3];
        }
    }
    return x;
}

double block_tridiagonal_residual(const std::vector<Mat2>& lower,
                                  const std::vector<Mat2>& diag,
                                  const std::vector<Mat2>& upper,
                                  const std::vector<Vec2>& rhs,
                                  const std::vector<Vec2>& x, bool cyclic) {
    const std::size_t n = diag.size();
    double res = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        Vec2 r = mat2_apply(diag[k], x[k]);
        if (k > 0) {
            const Vec2 t = mat2_apply(lower[k], x[k - 1]);
            r = {r[0] + t[0], r[1] + t[1]};
        } else if (cyclic) {
            const Vec2 t = mat2_apply(lower[0], x[n - 1]);
            r = {r[0] + t[0], r[1] + t[1]};
        }
        if (k + 1 < n) {
            const Vec2 t = mat2_apply(upper[k], x[k + 1]);
            r = {r[0] + t[0], r[1] + t[1]};
        } else if (cyclic) {
            const Vec2 t = mat2_apply(upper[n - 1], x[0]);
            r = {r[0] + t[0], r[1] + t[1]};
        }
        res = std::max(res, std::abs(r[0] - rhs[k][0]));
        res = std::max(res, std::abs(r[1] - rhs[k][1]));
    }
    return res;
}

}  // namespace qthydro::linalg
