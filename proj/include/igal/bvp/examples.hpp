#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "igal/bvp/definition.hpp"
#include "igal/bvp/operators.hpp"
#include "igal/nurbs/tensor_spline.hpp"

namespace igal::bvp {

using nurbs::KnotVector;
using nurbs::TensorSpline;

namespace geometry_data {

inline KnotVector cubic_bezier_knots() { return KnotVector({0, 0, 0, 0, 1, 1, 1, 1}, 3); }

/// Cubic B-spline curve of [0, 1] with control points 0, 1/3, 2/3, 1.
inline GeometryMap unit_interval() {
    return GeometryMap(TensorSpline({cubic_bezier_knots()}, 1, {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}));
}

/// Rational cubic patch of the quarter annulus 1 <= r <= 4, x, y >= 0. The first
/// parametric direction runs along the radius, the second sweeps the angle.
inline GeometryMap quarter_annulus() {
    const double s2 = std::sqrt(2.0);
    const double w = (1.0 + s2) / 3.0;
    // unit-radius arc control points, scaled by radius 1..4 along the first direction
    const double arc[4][2] = {{1.0, 0.0}, {1.0, 2.0 - s2}, {2.0 - s2, 1.0}, {0.0, 1.0}};
    const double arc_w[4] = {1.0, w, w, 1.0};
    std::vector<double> coef, weights;
    for (int j = 0; j < 4; ++j) {
        const double r = j + 1.0;
        for (int i = 0; i < 4; ++i) {
            coef.push_back(r * arc[i][0]);
            coef.push_back(r * arc[i][1]);
            weights.push_back(arc_w[i]);
        }
    }
    return GeometryMap(TensorSpline({cubic_bezier_knots(), cubic_bezier_knots()}, 2, coef, weights));
}

/// Trivariate cubic B-spline of the unit cube with control points (i, j, k) / 3.
inline GeometryMap unit_cube() {
    std::vector<double> coef;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                coef.push_back(i / 3.0);
                coef.push_back(j / 3.0);
                coef.push_back(k / 3.0);
            }
    const auto kv = cubic_bezier_knots();
    return GeometryMap(TensorSpline({kv, kv, kv}, 3, coef));
}

/// Cubic B-spline patch of the rectangle [-l, l] x [-h/2, h/2]. The first parametric
/// direction runs along x, the second along y. Control points sit at exact thirds, so
/// the map is affine; the tabulated data rounds them to two decimals.
inline GeometryMap beam_rectangle(double half_length = 5.0, double depth = 2.0) {
    std::vector<double> coef;
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 4; ++i) {
            coef.push_back(-half_length + 2.0 * half_length * j / 3.0);
            coef.push_back(-0.5 * depth + depth * i / 3.0);
        }
    }
    return GeometryMap(TensorSpline({cubic_bezier_knots(), cubic_bezier_knots()}, 2, coef));
}

} // namespace geometry_data

namespace detail {

inline std::vector<BoundaryCondition> homogeneous_dirichlet(int dim) {
    std::vector<BoundaryCondition> bcs;
    for (int axis = 0; axis < dim; ++axis) {
        for (int side = 0; side < 2; ++side) {
            bcs.push_back({Face{axis, side}, BcKind::Dirichlet, operators::trace_value(1),
                           [](const Vec&, const Vec&) { return make_vec({0.0}); }});
        }
    }
    return bcs;
}

inline void scalar_quantities(BvpDefinition& p) {
    p.quantity_names = {"T"};
    auto analytic = p.analytic;
    p.analytic_quantities = [analytic](const Vec& x) { return make_vec({analytic(x)[0].value}); };
    p.recover_quantities = [](const FieldDerivatives& f) { return make_vec({f[0].value}); };
}

inline PhysicalDerivatives scalar(double v, Vec g, Mat h) {
    PhysicalDerivatives d;
    d.value = v;
    d.grad = std::move(g);
    d.hess = std::move(h);
    return d;
}

/// sin(2 pi x) and its derivatives on the line.
inline FieldDerivatives sine_1d(const Vec& x) {
    constexpr double k = 2.0 * std::numbers::pi;
    Mat h(1, 1);
    h(0, 0) = -k * k * std::sin(k * x(0));
    return {scalar(std::sin(k * x(0)), make_vec({k * std::cos(k * x(0))}), h)};
}

} // namespace detail

/// -T'' + T = (1 + 4 pi^2) sin(2 pi x) on [0, 1], T(0) = T(1) = 0.
inline BvpDefinition example_1d_dirichlet() {
    BvpDefinition p;
    p.id = "I";
    p.name = "1D source problem, Dirichlet ends";
    p.geometry = geometry_data::unit_interval();
    p.components = 1;
    p.interior = operators::reaction_diffusion();
    p.source = [](const Vec& x) {
        constexpr double k = 2.0 * std::numbers::pi;
        return make_vec({(1.0 + k * k) * std::sin(k * x(0))});
    };
    p.boundary = detail::homogeneous_dirichlet(1);
    p.analytic = detail::sine_1d;
    detail::scalar_quantities(p);
    return p;
}

/// -Laplace T + T = f on the quarter annulus, T = 0 on the boundary, with exact solution
/// T = (x^2 + y^2 - 1)(x^2 + y^2 - 16) sin x sin y.
inline BvpDefinition example_2d_annulus() {
    BvpDefinition p;
    p.id = "II";
    p.name = "2D source problem on a quarter annulus";
    p.geometry = geometry_data::quarter_annulus();
    p.components = 1;
    p.interior = operators::reaction_diffusion();
    p.source = [](const Vec& v) {
        const double x = v(0), y = v(1);
        const double x2 = x * x, y2 = y * y;
        const double f = (3 * x2 * x2 - 67 * x2 - 67 * y2 + 3 * y2 * y2 + 6 * x2 * y2 + 116) * std::sin(x) * std::sin(y) +
                         (68 * x - 8 * x2 * x - 8 * x * y2) * std::cos(x) * std::sin(y) +
                         (68 * y - 8 * y2 * y - 8 * y * x2) * std::cos(y) * std::sin(x);
        return make_vec({f});
    };
    p.boundary = detail::homogeneous_dirichlet(2);
    p.analytic = [](const Vec& v) {
        const double x = v(0), y = v(1);
        const double s = x * x + y * y;
        // T = P(s) S(x, y) with P = (s - 1)(s - 16), S = sin x sin y
        const double P = (s - 1.0) * (s - 16.0);
        const double Px = 2.0 * x * (2.0 * s - 17.0), Py = 2.0 * y * (2.0 * s - 17.0);
        const double Pxx = 2.0 * (2.0 * s - 17.0) + 8.0 * x * x;
        const double Pyy = 2.0 * (2.0 * s - 17.0) + 8.0 * y * y;
        const double Pxy = 8.0 * x * y;
        const double S = std::sin(x) * std::sin(y);
        const double Sx = std::cos(x) * std::sin(y), Sy = std::sin(x) * std::cos(y);
        const double Sxy = std::cos(x) * std::cos(y);
        Mat h(2, 2);
        h(0, 0) = Pxx * S + 2.0 * Px * Sx - P * S;
        h(1, 1) = Pyy * S + 2.0 * Py * Sy - P * S;
        h(0, 1) = h(1, 0) = Pxy * S + Px * Sy + Py * Sx + P * Sxy;
        return FieldDerivatives{detail::scalar(P * S, make_vec({Px * S + P * Sx, Py * S + P * Sy}), h)};
    };
    detail::scalar_quantities(p);
    return p;
}

/// -Laplace T + T = (1 + 12 pi^2) sin(2 pi x) sin(2 pi y) sin(2 pi z) on the unit cube.
inline BvpDefinition example_3d_cube() {
    BvpDefinition p;
    p.id = "III";
    p.name = "3D source problem on the unit cube";
    p.geometry = geometry_data::unit_cube();
    p.components = 1;
    p.interior = operators::reaction_diffusion();
    p.source = [](const Vec& x) {
        constexpr double k = 2.0 * std::numbers::pi;
        return make_vec({(1.0 + 3.0 * k * k) * std::sin(k * x(0)) * std::sin(k * x(1)) * std::sin(k * x(2))});
    };
    p.boundary = detail::homogeneous_dirichlet(3);
    p.analytic = [](const Vec& x) {
        constexpr double k = 2.0 * std::numbers::pi;
        double s[3], c[3];
        for (int i = 0; i < 3; ++i) {
            s[i] = std::sin(k * x(i));
            c[i] = std::cos(k * x(i));
        }
        const double v = s[0] * s[1] * s[2];
        Vec g(3);
        g(0) = k * c[0] * s[1] * s[2];
        g(1) = k * s[0] * c[1] * s[2];
        g(2) = k * s[0] * s[1] * c[2];
        Mat h(3, 3);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (i == j) {
                    h(i, j) = -k * k * v;
                } else {
                    double t = k * k;
                    for (int m = 0; m < 3; ++m) t *= (m == i || m == j) ? c[m] : s[m];
                    h(i, j) = t;
                }
            }
        }
        return FieldDerivatives{detail::scalar(v, g, h)};
    };
    detail::scalar_quantities(p);
    return p;
}

namespace beam {

/// Closed-form stresses of the simply supported beam under uniform load q. The load acts
/// on y = -h/2, where sigma_y = -q; y = +h/2 is traction free.
inline Vec stresses(const MaterialParams& m, const Vec& v) {
    const double x = v(0), y = v(1);
    const double q = m.load, h = m.depth, l = m.half_length;
    const double h3 = h * h * h;
    const double sx = 6.0 * q / h3 * (l * l - x * x) * y + q * y / h * (4.0 * y * y / (h * h) - 0.6);
    const double sy = -0.5 * q * (1.0 + y / h) * (1.0 - 2.0 * y / h) * (1.0 - 2.0 * y / h);
    const double txy = -6.0 * q / h3 * x * (0.25 * h * h - y * y);
    return make_vec({sx, sy, txy});
}

/// Displacements compatible with `stresses` under plane stress, normalised so that
/// u_x(0, 0) = 0 and u_y(+-l, 0) = 0.
inline FieldDerivatives displacements(const MaterialParams& m, const Vec& v) {
    const double x = v(0), y = v(1);
    const double q = m.load, h = m.depth, l = m.half_length, E = m.youngs_modulus, nu = m.poisson_ratio;
    const double h2 = h * h, h3 = h2 * h, l2 = l * l, x2 = x * x, y2 = y * y;

    PhysicalDerivatives ux, uy;
    ux.grad = Vec::Zero(2);
    uy.grad = Vec::Zero(2);
    ux.hess = Mat::Zero(2, 2);
    uy.hess = Mat::Zero(2, 2);

    const double bx = 0.5 * nu - 1.5 * nu * y / h - 0.6 * y / h + 6.0 * l2 * y / h3 + 2.0 * nu * y2 * y / h3 + 4.0 * y2 * y / h3;
    ux.value = q * x * (bx - 2.0 * x2 * y / h3) / E;
    ux.grad(0) = q * (bx - 6.0 * x2 * y / h3) / E;
    ux.grad(1) = q * x * (-1.5 * nu - 0.6 + 6.0 * l2 / h2 + 6.0 * nu * y2 / h2 - 2.0 * x2 / h2 + 12.0 * y2 / h2) / (E * h);
    ux.hess(0, 0) = -12.0 * q * x * y / (E * h3);
    ux.hess(0, 1) = ux.hess(1, 0) =
        3.0 * q * (-0.5 * nu - 0.2 + 2.0 * l2 / h2 + 2.0 * nu * y2 / h2 - 2.0 * x2 / h2 + 4.0 * y2 / h2) / (E * h);
    ux.hess(1, 1) = 12.0 * q * x * y * (nu + 2.0) / (E * h3);

    uy.value = q *
               (-0.5 * y + 0.75 * l2 * nu / h + 1.2 * l2 / h - 0.75 * nu * x2 / h + 0.3 * nu * y2 / h - 1.2 * x2 / h +
                0.75 * y2 / h + 2.5 * l2 * l2 / h3 - 3.0 * l2 * nu * y2 / h3 - 3.0 * l2 * x2 / h3 + 3.0 * nu * x2 * y2 / h3 -
                nu * y2 * y2 / h3 + 0.5 * x2 * x2 / h3 - 0.5 * y2 * y2 / h3) /
               E;
    uy.grad(0) = q * x * (-1.5 * nu - 2.4 - 6.0 * l2 / h2 + 6.0 * nu * y2 / h2 + 2.0 * x2 / h2) / (E * h);
    uy.grad(1) = q *
                 (-0.5 + 0.6 * nu * y / h + 1.5 * y / h - 6.0 * l2 * nu * y / h3 + 6.0 * nu * x2 * y / h3 -
                  4.0 * nu * y2 * y / h3 - 2.0 * y2 * y / h3) /
                 E;
    uy.hess(0, 0) = 3.0 * q * (-0.5 * nu - 0.8 - 2.0 * l2 / h2 + 2.0 * nu * y2 / h2 + 2.0 * x2 / h2) / (E * h);
    uy.hess(0, 1) = uy.hess(1, 0) = 12.0 * nu * q * x * y / (E * h3);
    uy.hess(1, 1) = 3.0 * q * (0.2 * nu + 0.5 - 2.0 * l2 * nu / h2 + 2.0 * nu * x2 / h2 - 4.0 * nu * y2 / h2 - 2.0 * y2 / h2) / (E * h);
    return {ux, uy};
}

} // namespace beam

/// Plane-stress simply supported beam solved for displacements with the Navier operator.
///
/// All four sides carry traction conditions taken from the closed-form stresses (loaded
/// top, free bottom, end shear and bending stresses). Rigid-body motion is removed by
/// u_y = 0 at (+-l, 0) and u_x = 0 at (0, 0), which the closed-form displacements satisfy.
inline BvpDefinition example_beam(const MaterialParams& params = {}) {
    params.validate();
    BvpDefinition p;
    p.id = "IV";
    p.name = "plane-stress simply supported beam";
    p.material = params;
    p.geometry = geometry_data::beam_rectangle(params.half_length, params.depth);
    p.components = 2;
    const double E = params.youngs_modulus, nu = params.poisson_ratio;
    p.interior = operators::navier_plane_stress(E, nu);
    p.source = [](const Vec&) { return make_vec({0.0, 0.0}); };

    auto traction = [params](const Vec& x, const Vec& n) {
        const Vec s = beam::stresses(params, x);
        return make_vec({s(0) * n(0) + s(2) * n(1), s(2) * n(0) + s(1) * n(1)});
    };
    for (const Face f : {Face{0, 0}, Face{0, 1}, Face{1, 0}, Face{1, 1}}) {
        p.boundary.push_back({f, BcKind::Traction, operators::traction_plane_stress(E, nu), traction});
    }
    p.supports = {
        {make_vec({0.0, 0.5}), 1, 0.0}, // u_y(-l, 0)
        {make_vec({1.0, 0.5}), 1, 0.0}, // u_y(+l, 0)
        {make_vec({0.5, 0.5}), 0, 0.0}, // u_x(0, 0)
    };
    p.analytic = [params](const Vec& x) { return beam::displacements(params, x); };
    p.quantity_names = {"sigma_x", "sigma_y", "tau_xy"};
    p.analytic_quantities = [params](const Vec& x) { return beam::stresses(params, x); };
    p.recover_quantities = [E, nu](const FieldDerivatives& f) {
        return operators::plane_stress_from_gradients(f, E, nu);
    };
    return p;
}

/// Interior knots of the stability experiment's field.
inline std::vector<double> stability_knots() { return {0.25, 0.5, 0.6, 0.7, 0.75, 0.8}; }

/// -T'' + T = (1 + 4 pi^2) sin(2 pi x), T(0) = 0, T'(1) = 2 pi, on a fixed non-uniform
/// cubic field with 10 basis functions.
inline BvpDefinition example_1d_mixed() {
    BvpDefinition p = example_1d_dirichlet();
    p.id = "V";
    p.name = "1D source problem, Dirichlet left, Neumann right";
    p.boundary = {
        {Face{0, 0}, BcKind::Dirichlet, operators::trace_value(1),
         [](const Vec&, const Vec&) { return make_vec({0.0}); }},
        {Face{0, 1}, BcKind::Neumann, operators::normal_derivative(),
         [](const Vec& x, const Vec& n) { return make_vec({detail::sine_1d(x)[0].grad.dot(n)}); }},
    };
    p.field_knots = std::vector<KnotVector>{KnotVector::clamped(3, stability_knots())};
    return p;
}

/// Example by roman numeral or number ("I".."V", "1".."5").
inline BvpDefinition example_by_id(const std::string& id, const MaterialParams& params = {}) {
    if (id == "I" || id == "1") return example_1d_dirichlet();
    if (id == "II" || id == "2") return example_2d_annulus();
    if (id == "III" || id == "3") return example_3d_cube();
    if (id == "IV" || id == "4") return example_beam(params);
    if (id == "V" || id == "5") return example_1d_mixed();
    throw ConfigError("unknown example '" + id + "'");
}

} // namespace igal::bvp
