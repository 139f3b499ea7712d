#pragma once

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "igal/error.hpp"
#include "igal/types.hpp"

namespace igal::linalg {

enum class SolveMethod { Gauss, NormalCholesky, ConstrainedCholesky };

inline const char* to_string(SolveMethod m) {
    switch (m) {
    case SolveMethod::Gauss: return "gauss";
    case SolveMethod::NormalCholesky: return "normal_cholesky";
    case SolveMethod::ConstrainedCholesky: return "constrained_normal_cholesky";
    }
    return "?";
}

struct SolveReport {
    Vector x;
    double residual_norm = 0.0; ///< ||A x - b||
    SolveMethod method = SolveMethod::Gauss;
    double flop_estimate = 0.0;
    std::optional<double> condition_estimate;
};

inline double lu_flops(double n) { return 2.0 * n * n * n / 3.0; }
inline double normal_equation_flops(double m, double n) { return m * n * n + n * n * n / 3.0; }

/// Hager's estimate of ||M^{-1}||_1 given a solver for M (M symmetric, so M^{-T} = M^{-1}).
template <typename Solve>
double inverse_norm1_estimate(Eigen::Index n, Solve&& solve) {
    Vector x = Vector::Constant(n, 1.0 / static_cast<double>(n));
    double estimate = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        const Vector y = solve(x);
        estimate = y.lpNorm<1>();
        const Vector xi = y.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
        const Vector z = solve(xi);
        Eigen::Index j = 0;
        const double zmax = z.cwiseAbs().maxCoeff(&j);
        if (iter > 0 && zmax <= z.dot(x)) break;
        x.setZero();
        x(j) = 1.0;
    }
    return estimate;
}

/// Square solve by LU with partial pivoting. A pivot below 1e-14 ||A||_inf is reported as
/// a singular system.
inline SolveReport solve_square(const Matrix& A, const Vector& b) {
    if (A.rows() != A.cols()) {
        std::ostringstream msg;
        msg << "solve_square needs a square matrix, got " << A.rows() << "x" << A.cols();
        throw PreconditionError(msg.str());
    }
    if (b.size() != A.rows()) throw PreconditionError("right-hand side length does not match the matrix");
    const Eigen::Index n = A.rows();
    const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
    Eigen::PartialPivLU<Matrix> lu(A);
    const auto& LU = lu.matrixLU();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(std::abs(LU(i, i)) > 1e-14 * norm)) {
            std::ostringstream msg;
            msg << "singular system: pivot " << i << " is " << LU(i, i) << " (||A|| = " << norm << ")";
            throw SingularSystemError(msg.str(), static_cast<int>(i));
        }
    }
    SolveReport r;
    r.method = SolveMethod::Gauss;
    r.x = lu.solve(b);
    r.residual_norm = (A * r.x - b).norm();
    r.flop_estimate = lu_flops(static_cast<double>(n));
    return r;
}

struct NormalEquationOptions {
    int refinement_steps = 2;      ///< corrections A^T A dx = A^T (b - A x)
    bool estimate_condition = true;
};

/// Index of the first non-positive pivot of an unblocked Cholesky factorisation of N.
inline Eigen::Index breakdown_pivot(Matrix L) {
    const Eigen::Index n = L.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double d = L(k, k);
        if (!(d > 0.0)) return k;
        const double s = std::sqrt(d);
        const auto tail = n - k - 1;
        L.col(k).tail(tail) /= s;
        L.bottomRightCorner(tail, tail).noalias() -= L.col(k).tail(tail) * L.col(k).tail(tail).transpose();
    }
    return n;
}

/// Least-squares solve through the normal equations A^T A x = A^T b and Cholesky.
inline SolveReport solve_normal_equations(const Matrix& A, const Vector& b, const NormalEquationOptions& opt = {}) {
    if (A.rows() < A.cols()) {
        std::ostringstream msg;
        msg << "normal equations need at least as many rows as columns, got " << A.rows() << "x" << A.cols();
        throw PreconditionError(msg.str());
    }
    if (b.size() != A.rows()) throw PreconditionError("right-hand side length does not match the matrix");
    const Eigen::Index n = A.cols();
    Matrix N = Matrix::Zero(n, n);
    N.selfadjointView<Eigen::Lower>().rankUpdate(A.transpose());
    N.triangularView<Eigen::StrictlyUpper>() = N.transpose();

    Eigen::LLT<Matrix> llt(N);
    const Matrix& L = llt.matrixLLT();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double d = L(k, k) * L(k, k);
        if (llt.info() != Eigen::Success || !(d > 1e-15 * std::abs(N(k, k)))) {
            const Eigen::Index pivot = llt.info() == Eigen::Success ? k : breakdown_pivot(N);
            std::ostringstream msg;
            msg << "normal matrix is not positive definite at pivot " << pivot;
            throw RankDeficientError(msg.str(), static_cast<int>(pivot));
        }
    }
    auto solve = [&llt](const Vector& rhs) { return Vector(llt.solve(rhs)); };

    SolveReport r;
    r.method = SolveMethod::NormalCholesky;
    r.x = solve(A.transpose() * b);
    for (int step = 0; step < opt.refinement_steps; ++step) {
        r.x += solve(A.transpose() * (b - A * r.x));
    }
    r.residual_norm = (A * r.x - b).norm();
    r.flop_estimate = normal_equation_flops(static_cast<double>(A.rows()), static_cast<double>(n));
    if (opt.estimate_condition) {
        const double norm1 = N.cwiseAbs().colwise().sum().maxCoeff();
        r.condition_estimate = norm1 * inverse_norm1_estimate(n, solve);
    }
    return r;
}

/// Prioritised least squares: x minimises ||A_s x - b_s|| over the minimisers of
/// ||A_h x - b_h||, where h are the rows listed in `hard` and s the remaining rows.
///
/// The hard rows are reduced by a column-pivoted QR of A_h^T, which yields the
/// minimum-norm fit x0 of the hard rows and an orthonormal basis Z of their null space.
/// The soft rows are then solved for y in x = x0 + Z y through the normal equations.
inline SolveReport solve_constrained_least_squares(const Matrix& A, const Vector& b, const std::vector<Eigen::Index>& hard,
                                                   const NormalEquationOptions& opt = {}) {
    if (b.size() != A.rows()) throw PreconditionError("right-hand side length does not match the matrix");
    const Eigen::Index n = A.cols();
    std::vector<bool> is_hard(static_cast<std::size_t>(A.rows()), false);
    for (auto r : hard) {
        if (r < 0 || r >= A.rows()) throw PreconditionError("constraint row index out of range");
        is_hard[static_cast<std::size_t>(r)] = true;
    }
    const auto p = static_cast<Eigen::Index>(std::count(is_hard.begin(), is_hard.end(), true));
    if (p == 0) return solve_normal_equations(A, b, opt);

    Matrix B(p, n), S(A.rows() - p, n);
    Vector g(p), bs(A.rows() - p);
    for (Eigen::Index r = 0, ih = 0, is = 0; r < A.rows(); ++r) {
        if (is_hard[static_cast<std::size_t>(r)]) {
            B.row(ih) = A.row(r);
            g(ih++) = b(r);
        } else {
            S.row(is) = A.row(r);
            bs(is++) = b(r);
        }
    }

    Eigen::ColPivHouseholderQR<Matrix> qr(B.transpose());
    const Eigen::Index rank = qr.rank();
    const Matrix Q = qr.householderQ();
    const Matrix Q1 = Q.leftCols(rank);
    Vector x = Q1 * Matrix(B * Q1).colPivHouseholderQr().solve(g);

    SolveReport r;
    r.method = SolveMethod::ConstrainedCholesky;
    if (rank < n) {
        const Matrix Z = Q.rightCols(n - rank);
        if (S.rows() < n - rank) {
            std::ostringstream msg;
            msg << S.rows() << " unconstrained rows cannot determine " << n - rank << " remaining unknowns";
            throw RankDeficientError(msg.str(), static_cast<int>(rank + S.rows()));
        }
        const auto inner = solve_normal_equations(S * Z, bs - S * x, opt);
        x += Z * inner.x;
        r.condition_estimate = inner.condition_estimate;
    }
    r.x = std::move(x);
    r.residual_norm = (A * r.x - b).norm();
    r.flop_estimate = normal_equation_flops(static_cast<double>(A.rows()), static_cast<double>(n));
    return r;
}

/// Square systems by Gaussian elimination, overdetermined ones by normal equations.
inline SolveReport solve(const Matrix& A, const Vector& b) {
    if (A.rows() == A.cols()) return solve_square(A, b);
    return solve_normal_equations(A, b);
}

} // namespace igal::linalg
