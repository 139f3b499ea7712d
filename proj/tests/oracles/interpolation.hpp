#pragma once

#include <functional>
#include <vector>

#include "de_boor.hpp"
#include "householder_qr.hpp"

namespace oracle {

/// Coefficients of the spline on knots t (degree p) interpolating f at the averages of
/// p consecutive interior knots.
inline std::vector<double> interpolate(const std::vector<double>& t, int p, const std::function<double(double)>& f) {
    const std::size_t n = basis_count(t, p);
    DenseMatrix A(n, n);
    std::vector<double> b(n);
    for (std::size_t r = 0; r < n; ++r) {
        double u = 0.0;
        for (int k = 1; k <= p; ++k) u += t[r + static_cast<std::size_t>(k)];
        u /= p;
        for (std::size_t i = 0; i < n; ++i) A(r, i) = basis(t, i, p, u);
        b[r] = f(u);
    }
    return least_squares_qr(A, b);
}

} // namespace oracle
