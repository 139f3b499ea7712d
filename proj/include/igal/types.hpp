#pragma once

#include <Eigen/Dense>

namespace igal {

/// Small vectors and matrices (parametric/physical dimension and field components are
/// at most 3), stack allocated.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline Vec make_vec(std::initializer_list<double> values) {
    Vec v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) {
        v(i++) = x;
    }
    return v;
}

} // namespace igal
