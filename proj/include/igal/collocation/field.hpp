#pragma once

#include <cstddef>
#include <sstream>
#include <vector>

#include "igal/bvp/definition.hpp"
#include "igal/error.hpp"
#include "igal/geometry/geometry_map.hpp"
#include "igal/nurbs/knot_vector.hpp"
#include "igal/nurbs/tensor_spline.hpp"

namespace igal::collocation {

using geometry::GeometryMap;
using nurbs::KnotVector;
using nurbs::TensorSpline;

/// Unknown field on the given knot vectors. The geometry is refined onto the same knots
/// and its weights are copied, so the field lives in the NURBS space of the refined map.
inline TensorSpline build_field(const GeometryMap& geometry, const std::vector<KnotVector>& knots, int components,
                                int operator_order) {
    const auto& g = geometry.spline();
    if (static_cast<int>(knots.size()) != g.dim()) {
        throw PreconditionError("field knot vectors do not match geometry dimension");
    }
    for (std::size_t k = 0; k < knots.size(); ++k) {
        if (knots[k].degree() <= operator_order) {
            std::ostringstream msg;
            msg << "field degree " << knots[k].degree() << " in direction " << k
                << " must exceed the operator order " << operator_order;
            throw PreconditionError(msg.str());
        }
    }
    const TensorSpline refined = nurbs::refine_to(g, knots);
    std::vector<double> zeros(refined.basis_count() * static_cast<std::size_t>(components), 0.0);
    return TensorSpline(refined.bases(), components, std::move(zeros), refined.weights());
}

/// Unknown field obtained by uniform refinement of the geometry to `counts` basis
/// functions per direction.
inline TensorSpline build_field(const GeometryMap& geometry, const std::vector<int>& counts, int components,
                                int operator_order) {
    const auto& g = geometry.spline();
    if (static_cast<int>(counts.size()) != g.dim()) {
        throw PreconditionError("refinement counts do not match geometry dimension");
    }
    std::vector<KnotVector> knots;
    for (int k = 0; k < g.dim(); ++k) {
        const auto& kv = g.basis(k);
        const int extra = counts[static_cast<std::size_t>(k)] - kv.basis_count();
        if (extra < 0) {
            std::ostringstream msg;
            msg << "direction " << k << ": requested " << counts[static_cast<std::size_t>(k)]
                << " basis functions, geometry already has " << kv.basis_count();
            throw InvalidRefinementError(msg.str());
        }
        knots.push_back(nurbs::uniform_refine(kv, extra));
    }
    return build_field(geometry, knots, components, operator_order);
}

/// Field for a problem: its fixed knot vectors when it has them, otherwise uniform
/// refinement of the geometry.
inline TensorSpline build_field(const bvp::BvpDefinition& problem, const std::vector<int>& counts) {
    if (problem.field_knots) {
        const auto& knots = *problem.field_knots;
        for (std::size_t k = 0; k < knots.size() && k < counts.size(); ++k) {
            if (knots[k].basis_count() != counts[k]) {
                std::ostringstream msg;
                msg << "example " << problem.id << " fixes " << knots[k].basis_count()
                    << " basis functions in direction " << k << ", got " << counts[k];
                throw PreconditionError(msg.str());
            }
        }
        return build_field(problem.geometry, knots, problem.components, problem.interior.order);
    }
    return build_field(problem.geometry, counts, problem.components, problem.interior.order);
}

/// Physical value and derivatives (up to `order`) of every field component at theta.
inline bvp::FieldDerivatives field_derivatives(const geometry::PullbackData& pb, const TensorSpline& field,
                                               int order) {
    const auto sp = nurbs::evaluate(field, pb.theta, order);
    bvp::FieldDerivatives out;
    for (int c = 0; c < field.components(); ++c) {
        const Vec g = order >= 1 ? Vec(sp.jacobian.row(c).transpose()) : Vec::Zero(field.dim());
        const Mat h = order >= 2 ? sp.hessian[static_cast<std::size_t>(c)] : Mat::Zero(field.dim(), field.dim());
        out.push_back(geometry::to_physical(pb, sp.value(c), g, h, order));
    }
    return out;
}

inline bvp::FieldDerivatives field_derivatives(const GeometryMap& geometry, const TensorSpline& field,
                                               const Vec& theta, int order) {
    return field_derivatives(geometry::pullback(geometry, theta), field, order);
}

} // namespace igal::collocation
