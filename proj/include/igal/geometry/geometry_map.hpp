#pragma once

#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "igal/error.hpp"
#include "igal/nurbs/tensor_spline.hpp"
#include "igal/types.hpp"

namespace igal::geometry {

using nurbs::TensorSpline;

/// Point-valued spline F mapping the parametric domain onto the physical domain.
/// Parametric and physical dimension coincide.
class GeometryMap {
public:
    GeometryMap() = default;

    explicit GeometryMap(TensorSpline spline) : spline_(std::move(spline)) {
        if (spline_.components() != spline_.dim()) {
            throw PreconditionError("geometry spline must have one component per parametric direction");
        }
    }

    int dim() const noexcept { return spline_.dim(); }
    const TensorSpline& spline() const noexcept { return spline_; }

    Vec map(const Vec& theta) const { return nurbs::evaluate(spline_, theta, 0).value; }

    Vec lower() const {
        Vec v(dim());
        for (int k = 0; k < dim(); ++k) v(k) = spline_.basis(k).front();
        return v;
    }

    Vec upper() const {
        Vec v(dim());
        for (int k = 0; k < dim(); ++k) v(k) = spline_.basis(k).back();
        return v;
    }

private:
    TensorSpline spline_;
};

/// Chain-rule data of the geometry map at one parameter.
struct PullbackData {
    Vec theta;
    Vec point;                 ///< F(theta)
    Mat jacobian;              ///< jacobian(i, k) = dx_i / dtheta_k
    Mat inverse_jacobian;
    std::vector<Mat> second;   ///< second[i](k, l) = d2 x_i / dtheta_k dtheta_l
    double det = 0.0;
};

inline PullbackData pullback(const GeometryMap& g, const Vec& theta) {
    const auto sp = nurbs::evaluate(g.spline(), theta, 2);
    PullbackData out;
    out.theta = theta;
    out.point = sp.value;
    out.jacobian = sp.jacobian;
    out.second = sp.hessian;
    out.det = out.jacobian.determinant();
    if (!(std::abs(out.det) >= 1e-12)) {
        std::ostringstream msg;
        msg << "singular geometry Jacobian (det = " << out.det << ") at parameter (";
        for (int k = 0; k < theta.size(); ++k) msg << (k ? ", " : "") << theta(k);
        msg << ")";
        throw SingularGeometryError(msg.str());
    }
    out.inverse_jacobian = out.jacobian.inverse();
    return out;
}

/// Outward unit normal of the parametric face (axis, side) at a boundary point.
/// The physical normal of the face theta_axis = const is grad_x theta_axis = row `axis`
/// of the inverse Jacobian.
inline Vec outward_normal(const PullbackData& pb, int axis, int side) {
    Vec n = pb.inverse_jacobian.row(axis).transpose();
    n /= n.norm();
    return side == 0 ? Vec(-n) : n;
}

/// Physical first and second derivatives of a scalar function.
struct PhysicalDerivatives {
    double value = 0.0;
    Vec grad;
    Mat hess;
};

/// grad_x = J^{-T} grad_theta
inline Vec to_physical_gradient(const PullbackData& pb, const Vec& grad_theta) {
    return pb.inverse_jacobian.transpose() * grad_theta;
}

/// H_x = J^{-T} (H_theta - sum_k (grad_x)_k d2x_k/dtheta2) J^{-1}
inline Mat to_physical_hessian(const PullbackData& pb, const Vec& grad_x, const Mat& hess_theta) {
    Mat corrected = hess_theta;
    for (int k = 0; k < grad_x.size(); ++k) {
        corrected -= grad_x(k) * pb.second[static_cast<std::size_t>(k)];
    }
    Mat h = pb.inverse_jacobian.transpose() * corrected * pb.inverse_jacobian;
    return 0.5 * (h + h.transpose());
}

inline PhysicalDerivatives to_physical(const PullbackData& pb, double value, const Vec& grad_theta,
                                       const Mat& hess_theta, int order) {
    PhysicalDerivatives d;
    d.value = value;
    const int dim = static_cast<int>(pb.theta.size());
    d.grad = Vec::Zero(dim);
    d.hess = Mat::Zero(dim, dim);
    if (order >= 1) d.grad = to_physical_gradient(pb, grad_theta);
    if (order >= 2) d.hess = to_physical_hessian(pb, d.grad, hess_theta);
    return d;
}

/// Physical gradient of each field component: row c holds d field_c / dx.
inline Mat physical_gradient(const GeometryMap& g, const Vec& theta, const TensorSpline& field) {
    const auto pb = pullback(g, theta);
    const auto fp = nurbs::evaluate(field, theta, 1);
    Mat out(field.components(), g.dim());
    for (int c = 0; c < field.components(); ++c) {
        out.row(c) = to_physical_gradient(pb, fp.jacobian.row(c).transpose()).transpose();
    }
    return out;
}

/// Physical Hessian of field component `component`.
inline Mat physical_hessian(const GeometryMap& g, const Vec& theta, const TensorSpline& field,
                            int component = 0) {
    if (field.min_degree() < 2) {
        throw UnsupportedDerivativeError("physical Hessian needs field degree >= 2 in every direction");
    }
    const auto pb = pullback(g, theta);
    const auto fp = nurbs::evaluate(field, theta, 2);
    const Vec grad = to_physical_gradient(pb, fp.jacobian.row(component).transpose());
    return to_physical_hessian(pb, grad, fp.hessian[static_cast<std::size_t>(component)]);
}

} // namespace igal::geometry
