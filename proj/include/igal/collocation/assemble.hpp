#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "igal/bvp/definition.hpp"
#include "igal/collocation/field.hpp"
#include "igal/collocation/points.hpp"
#include "igal/error.hpp"
#include "igal/geometry/geometry_map.hpp"
#include "igal/nurbs/tensor_spline.hpp"
#include "igal/types.hpp"
#include "igal/util/parallel.hpp"

namespace igal::collocation {

enum class RowKind { Interior, Boundary, Support };

inline const char* to_string(RowKind k) {
    switch (k) {
    case RowKind::Interior: return "interior";
    case RowKind::Boundary: return "boundary";
    case RowKind::Support: return "support";
    }
    return "?";
}

struct RowMeta {
    std::size_t point = 0; ///< index into interior, boundary or support list
    RowKind kind = RowKind::Interior;
    int equation = 0;      ///< component of the operator output
    int face = -1;         ///< face id of boundary rows
    bool essential = false; ///< Dirichlet condition or point support
};

/// Dense collocation system A x = b. Columns follow the field coefficient layout
/// (basis index * components + component).
struct CollocationSystem {
    Matrix A;
    Vector b;
    std::vector<RowMeta> rows;

    Eigen::Index row_count() const { return A.rows(); }
    Eigen::Index col_count() const { return A.cols(); }
};

struct AssemblyOptions {
    double boundary_weight = 1.0; ///< scales boundary rows and their data
};

/// Conditions imposed at a boundary point: one per distinct condition kind, taken from
/// the lowest face of that kind the point lies on.
inline std::vector<const bvp::BoundaryCondition*> conditions_at(const bvp::BvpDefinition& problem,
                                                                const BoundaryPoint& point) {
    std::vector<const bvp::BoundaryCondition*> out;
    for (const auto& face : point.faces) {
        const auto* bc = problem.condition_on(face);
        if (!bc) continue;
        bool seen = false;
        for (const auto* other : out) seen = seen || other->kind == bc->kind;
        if (!seen) out.push_back(bc);
    }
    return out;
}

namespace detail {

inline std::string describe(const Vec& theta) {
    std::ostringstream s;
    s << "(";
    for (Eigen::Index k = 0; k < theta.size(); ++k) s << (k ? ", " : "") << theta(k);
    s << ")";
    return s.str();
}

/// Adds op applied to every local basis function into rows [row, row + equations).
inline void add_operator_rows(Matrix& A, Eigen::Index row, const bvp::LinearOperator& op,
                              const geometry::PullbackData& pb, const nurbs::LocalBasis& basis, const Vec& normal,
                              int components, double weight) {
    Mat block(op.equations, op.components);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        const auto phi = geometry::to_physical(pb, basis.value[a], basis.grad[a], basis.hess[a], op.order);
        block.setZero();
        op.apply(phi, normal, block);
        const auto col = static_cast<Eigen::Index>(basis.index[a]) * components;
        for (int e = 0; e < op.equations; ++e) {
            for (int c = 0; c < op.components; ++c) A(row + e, col + c) += weight * block(e, c);
        }
    }
}

} // namespace detail

/// Assembles interior rows (operator = source), then boundary rows (condition = data),
/// then point-support rows. Within each block points keep their lexicographic order and
/// the equations of one point are consecutive.
inline CollocationSystem assemble(const bvp::BvpDefinition& problem, const nurbs::TensorSpline& field,
                                  const CollocationSet& points, const AssemblyOptions& options = {}) {
    problem.validate();
    if (field.dim() != problem.dim()) throw PreconditionError("field and geometry dimensions differ");
    if (field.components() != problem.components) {
        throw PreconditionError("field component count does not match the problem");
    }
    const int C = problem.components;

    // row offsets are fixed before the parallel fill
    std::vector<Eigen::Index> interior_row(points.interior.size());
    std::vector<Eigen::Index> boundary_row(points.boundary.size());
    std::vector<std::vector<const bvp::BoundaryCondition*>> boundary_bcs(points.boundary.size());
    std::vector<RowMeta> meta;
    Eigen::Index rows = 0;
    for (std::size_t i = 0; i < points.interior.size(); ++i) {
        interior_row[i] = rows;
        for (int e = 0; e < problem.interior.equations; ++e) meta.push_back({i, RowKind::Interior, e, -1, false});
        rows += problem.interior.equations;
    }
    for (std::size_t j = 0; j < points.boundary.size(); ++j) {
        boundary_row[j] = rows;
        boundary_bcs[j] = conditions_at(problem, points.boundary[j]);
        for (const auto* bc : boundary_bcs[j]) {
            for (int e = 0; e < bc->op.equations; ++e) meta.push_back({j, RowKind::Boundary, e, bc->face.id(), bc->kind == bvp::BcKind::Dirichlet});
            rows += bc->op.equations;
        }
    }
    const Eigen::Index support_row = rows;
    for (std::size_t s = 0; s < problem.supports.size(); ++s) {
        meta.push_back({s, RowKind::Support, problem.supports[s].component, -1, true});
        ++rows;
    }

    CollocationSystem sys;
    sys.A = Matrix::Zero(rows, static_cast<Eigen::Index>(field.basis_count()) * C);
    sys.b = Vector::Zero(rows);
    sys.rows = std::move(meta);

    const std::size_t n_int = points.interior.size();
    const std::size_t n_bdy = points.boundary.size();
    util::parallel_for(n_int + n_bdy, [&](std::size_t k) {
        const bool interior = k < n_int;
        const Vec& theta = interior ? points.interior[k] : points.boundary[k - n_int].theta;
        if (!field.contains(theta)) {
            throw AssemblyError("collocation point " + detail::describe(theta) + " lies outside the parametric domain");
        }
        const auto pb = geometry::pullback(problem.geometry, theta);
        if (interior) {
            const auto basis = nurbs::local_basis(field, theta, problem.interior.order);
            const Eigen::Index r = interior_row[k];
            detail::add_operator_rows(sys.A, r, problem.interior, pb, basis, Vec(), C, 1.0);
            const Vec f = problem.source(pb.point);
            for (int e = 0; e < problem.interior.equations; ++e) sys.b(r + e) = f(e);
            return;
        }
        const std::size_t j = k - n_int;
        Eigen::Index r = boundary_row[j];
        for (const auto* bc : boundary_bcs[j]) {
            const Vec n = geometry::outward_normal(pb, bc->face.axis, bc->face.side);
            const auto basis = nurbs::local_basis(field, theta, bc->op.order);
            detail::add_operator_rows(sys.A, r, bc->op, pb, basis, n, C, options.boundary_weight);
            const Vec g = bc->data(pb.point, n);
            for (int e = 0; e < bc->op.equations; ++e) sys.b(r + e) = options.boundary_weight * g(e);
            r += bc->op.equations;
        }
    });

    for (std::size_t s = 0; s < problem.supports.size(); ++s) {
        const auto& sp = problem.supports[s];
        const auto basis = nurbs::local_basis(field, sp.theta, 0);
        const Eigen::Index r = support_row + static_cast<Eigen::Index>(s);
        for (std::size_t a = 0; a < basis.size(); ++a) {
            sys.A(r, static_cast<Eigen::Index>(basis.index[a]) * C + sp.component) += basis.value[a];
        }
        sys.b(r) = sp.value;
    }
    return sys;
}

} // namespace igal::collocation
