#pragma once

#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "igal/error.hpp"
#include "igal/geometry/geometry_map.hpp"
#include "igal/nurbs/knot_vector.hpp"
#include "igal/types.hpp"

namespace igal::bvp {

using geometry::GeometryMap;
using geometry::PhysicalDerivatives;

/// Physical derivatives of every component of a (possibly vector valued) field.
using FieldDerivatives = std::vector<PhysicalDerivatives>;

/// Parametric boundary face: the face theta_axis = lower (side 0) or upper (side 1).
struct Face {
    int axis = 0;
    int side = 0;

    int id() const { return 2 * axis + side; }
    bool operator==(const Face&) const = default;
};

/// Linear differential operator of order <= 2 acting on a `components`-valued field.
///
/// `apply` receives the physical derivatives of a scalar shape function phi and the
/// outward normal (empty in the interior) and fills `block`, an equations x components
/// matrix whose column c is the operator applied to phi e_c.
struct LinearOperator {
    int equations = 1;
    int components = 1;
    int order = 2;
    std::function<void(const PhysicalDerivatives& phi, const Vec& normal, Mat& block)> apply;

    Mat block(const PhysicalDerivatives& phi, const Vec& normal) const {
        Mat b = Mat::Zero(equations, components);
        apply(phi, normal, b);
        return b;
    }

    /// Operator applied to a field given by its per-component derivatives.
    Vec apply_to_field(const FieldDerivatives& field, const Vec& normal) const {
        Vec out = Vec::Zero(equations);
        for (int c = 0; c < components; ++c) {
            out += block(field[static_cast<std::size_t>(c)], normal).col(c);
        }
        return out;
    }
};

enum class BcKind { Dirichlet, Neumann, Traction };

inline const char* to_string(BcKind k) {
    switch (k) {
    case BcKind::Dirichlet: return "dirichlet";
    case BcKind::Neumann: return "neumann";
    case BcKind::Traction: return "traction";
    }
    return "?";
}

/// Boundary condition G T = g on one parametric face.
struct BoundaryCondition {
    Face face;
    BcKind kind = BcKind::Dirichlet;
    LinearOperator op;
    std::function<Vec(const Vec& x, const Vec& normal)> data;
};

/// Pointwise constraint field_component(F(theta)) = value, used to remove rigid-body
/// modes of pure traction problems.
struct PointConstraint {
    Vec theta;
    int component = 0;
    double value = 0.0;
};

/// Material and load parameters of the plane-stress beam.
struct MaterialParams {
    double youngs_modulus = 1.0e5;
    double poisson_ratio = 0.3;
    double load = 10.0;
    double depth = 2.0;       ///< h; faces at y = -h/2 (loaded) and y = +h/2
    double half_length = 5.0; ///< l; ends at x = -l and x = +l

    bool operator==(const MaterialParams&) const = default;

    void validate() const {
        if (!(youngs_modulus > 0.0)) throw PreconditionError("Young's modulus must be positive");
        if (!(poisson_ratio > 0.0 && poisson_ratio < 0.5)) {
            throw PreconditionError("Poisson ratio must lie in (0, 0.5)");
        }
        if (!(depth > 0.0)) throw PreconditionError("beam depth must be positive");
        if (!(half_length > 0.0)) throw PreconditionError("beam half length must be positive");
    }
};

/// Boundary value problem D T = f in the domain, G T = g on its boundary.
struct BvpDefinition {
    std::string id;   ///< "I" .. "V"
    std::string name;
    GeometryMap geometry;
    int components = 1;

    LinearOperator interior;
    std::function<Vec(const Vec& x)> source;

    std::vector<BoundaryCondition> boundary;
    std::vector<PointConstraint> supports;

    /// Exact solution with physical derivatives, when known.
    std::function<FieldDerivatives(const Vec& x)> analytic;

    /// Reported quantities: the solution itself for scalar problems, stresses for the beam.
    std::vector<std::string> quantity_names{"T"};
    std::function<Vec(const Vec& x)> analytic_quantities;
    std::function<Vec(const FieldDerivatives& field)> recover_quantities;

    /// Field knot vectors that replace uniform refinement, when the experiment fixes them.
    std::optional<std::vector<nurbs::KnotVector>> field_knots;
    std::optional<MaterialParams> material;

    int dim() const { return geometry.dim(); }

    bool has_analytic() const { return static_cast<bool>(analytic); }

    /// Largest derivative order among interior and boundary operators.
    int max_order() const {
        int o = interior.order;
        for (const auto& bc : boundary) o = std::max(o, bc.op.order);
        return o;
    }

    const BoundaryCondition* condition_on(const Face& f) const {
        for (const auto& bc : boundary) {
            if (bc.face == f) return &bc;
        }
        return nullptr;
    }

    /// Every parametric face carries exactly one condition; operators are at most second order.
    void validate() const {
        if (interior.order > 2) throw PreconditionError("interior operator order exceeds 2");
        if (interior.components != components) {
            throw PreconditionError("interior operator component count mismatch");
        }
        for (int axis = 0; axis < dim(); ++axis) {
            for (int side = 0; side < 2; ++side) {
                int count = 0;
                for (const auto& bc : boundary) {
                    if (bc.face == Face{axis, side}) ++count;
                }
                if (count != 1) {
                    std::ostringstream msg;
                    msg << "face (axis " << axis << ", side " << side << ") has " << count
                        << " boundary conditions, expected 1";
                    throw PreconditionError(msg.str());
                }
            }
        }
        for (const auto& bc : boundary) {
            if (bc.op.order > 2) throw PreconditionError("boundary operator order exceeds 2");
            if (bc.face.axis < 0 || bc.face.axis >= dim()) throw PreconditionError("face axis out of range");
        }
    }
};

} // namespace igal::bvp
