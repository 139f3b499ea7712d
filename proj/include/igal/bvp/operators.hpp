#pragma once

#include "igal/bvp/definition.hpp"

namespace igal::bvp::operators {

/// -Laplace(T) + T for a scalar field in any dimension.
inline LinearOperator reaction_diffusion() {
    LinearOperator op;
    op.equations = 1;
    op.components = 1;
    op.order = 2;
    op.apply = [](const PhysicalDerivatives& phi, const Vec&, Mat& block) {
        block(0, 0) = -phi.hess.trace() + phi.value;
    };
    return op;
}

/// Field value (one equation per component).
inline LinearOperator trace_value(int components) {
    LinearOperator op;
    op.equations = components;
    op.components = components;
    op.order = 0;
    op.apply = [components](const PhysicalDerivatives& phi, const Vec&, Mat& block) {
        for (int c = 0; c < components; ++c) block(c, c) = phi.value;
    };
    return op;
}

/// Outward normal derivative of a scalar field.
inline LinearOperator normal_derivative() {
    LinearOperator op;
    op.equations = 1;
    op.components = 1;
    op.order = 1;
    op.apply = [](const PhysicalDerivatives& phi, const Vec& normal, Mat& block) {
        block(0, 0) = phi.grad.dot(normal);
    };
    return op;
}

/// Lame constants of plane stress: (lambda*, mu).
inline std::pair<double, double> plane_stress_lame(double E, double nu) {
    return {E * nu / (1.0 - nu * nu), E / (2.0 * (1.0 + nu))};
}

/// Plane-stress Navier operator mu Laplace(u) + (lambda* + mu) grad div u.
inline LinearOperator navier_plane_stress(double E, double nu) {
    const auto [lambda, mu] = plane_stress_lame(E, nu);
    LinearOperator op;
    op.equations = 2;
    op.components = 2;
    op.order = 2;
    op.apply = [lambda, mu](const PhysicalDerivatives& phi, const Vec&, Mat& block) {
        const double lap = phi.hess.trace();
        for (int i = 0; i < 2; ++i) {
            for (int c = 0; c < 2; ++c) {
                block(i, c) = (i == c ? mu * lap : 0.0) + (lambda + mu) * phi.hess(i, c);
            }
        }
    };
    return op;
}

/// Plane-stress traction sigma(u) n.
inline LinearOperator traction_plane_stress(double E, double nu) {
    const auto [lambda, mu] = plane_stress_lame(E, nu);
    LinearOperator op;
    op.equations = 2;
    op.components = 2;
    op.order = 1;
    op.apply = [lambda, mu](const PhysicalDerivatives& phi, const Vec& n, Mat& block) {
        const double dn = phi.grad.dot(n);
        for (int i = 0; i < 2; ++i) {
            for (int c = 0; c < 2; ++c) {
                block(i, c) = lambda * phi.grad(c) * n(i) + mu * ((i == c ? dn : 0.0) + n(c) * phi.grad(i));
            }
        }
    };
    return op;
}

/// (sigma_x, sigma_y, tau_xy) from displacement gradients.
inline Vec plane_stress_from_gradients(const FieldDerivatives& u, double E, double nu) {
    const double ex = u[0].grad(0);
    const double ey = u[1].grad(1);
    const double gxy = u[0].grad(1) + u[1].grad(0);
    const double k = E / (1.0 - nu * nu);
    return make_vec({k * (ex + nu * ey), k * (ey + nu * ex), E / (2.0 * (1.0 + nu)) * gxy});
}

} // namespace igal::bvp::operators
