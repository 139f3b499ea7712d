#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "igal/bvp/definition.hpp"
#include "igal/error.hpp"
#include "igal/nurbs/knot_vector.hpp"
#include "igal/types.hpp"

namespace igal::collocation {

using bvp::Face;
using nurbs::KnotVector;

/// How collocation parameters are placed along each parametric direction.
///  - Greville: Greville abscissae of the clamped uniform knot vector (field degree) that
///    has `counts[k]` basis functions. When the field itself is uniformly refined and
///    counts equal the field basis counts this is the field's own Greville set.
///  - Uniform: `counts[k]` equally spaced parameters including both ends.
///  - RefinedGreville: Greville abscissae of the field knot vector after repeatedly
///    inserting the midpoint of its longest interval up to `counts[k]` basis functions.
enum class SchemeKind { Greville, Uniform, RefinedGreville };

inline const char* to_string(SchemeKind k) {
    switch (k) {
    case SchemeKind::Greville: return "greville";
    case SchemeKind::Uniform: return "uniform";
    case SchemeKind::RefinedGreville: return "refined_greville";
    }
    return "?";
}

inline SchemeKind scheme_from_string(const std::string& s) {
    if (s == "greville") return SchemeKind::Greville;
    if (s == "uniform") return SchemeKind::Uniform;
    if (s == "refined_greville") return SchemeKind::RefinedGreville;
    throw ConfigError("unknown collocation scheme '" + s + "'");
}

struct CollocationScheme {
    SchemeKind kind = SchemeKind::Greville;
    std::vector<int> counts;
};

struct BoundaryPoint {
    Vec theta;
    std::vector<Face> faces; ///< every parametric face the point lies on
};

struct CollocationSet {
    std::vector<Vec> interior;
    std::vector<BoundaryPoint> boundary;

    std::size_t size() const { return interior.size() + boundary.size(); }
};

/// Collocation parameters along one direction of the field.
inline std::vector<double> collocation_parameters(const KnotVector& field_basis, SchemeKind kind, int count) {
    const double a = field_basis.front(), b = field_basis.back();
    switch (kind) {
    case SchemeKind::Greville:
        return nurbs::greville_abscissae(KnotVector::uniform(field_basis.degree(), count, a, b));
    case SchemeKind::RefinedGreville:
        return nurbs::greville_abscissae(nurbs::refine_to_count(field_basis, count));
    case SchemeKind::Uniform: {
        std::vector<double> u(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) u[static_cast<std::size_t>(i)] = a + (b - a) * i / (count - 1.0);
        u.back() = b;
        return u;
    }
    }
    return {};
}

/// Tensor-product collocation points. A point is a boundary point iff one of its
/// coordinates sits at a parametric extreme; the remaining points are interior. Both
/// lists are in lexicographic order (last axis fastest).
inline CollocationSet generate_collocation_points(const std::vector<KnotVector>& field_bases,
                                                  const CollocationScheme& scheme) {
    const auto dim = field_bases.size();
    if (scheme.counts.size() != dim) {
        throw InvalidSchemeError("collocation counts must be given per parametric direction");
    }
    std::vector<std::vector<double>> axes;
    for (std::size_t k = 0; k < dim; ++k) {
        const int m = scheme.counts[k];
        const int n = field_bases[k].basis_count();
        if (m < n || m < 2) {
            std::ostringstream msg;
            msg << "direction " << k << ": " << m << " collocation points for " << n << " basis functions";
            throw InvalidSchemeError(msg.str());
        }
        auto u = collocation_parameters(field_bases[k], scheme.kind, m);
        if (std::adjacent_find(u.begin(), u.end()) != u.end()) {
            throw InvalidSchemeError("duplicate collocation parameters");
        }
        axes.push_back(std::move(u));
    }

    std::size_t total = 1;
    for (const auto& u : axes) total *= u.size();

    CollocationSet set;
    std::vector<std::size_t> idx(dim, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (std::size_t k = dim; k-- > 0;) {
            idx[k] = rem % axes[k].size();
            rem /= axes[k].size();
        }
        Vec theta(static_cast<Eigen::Index>(dim));
        std::vector<Face> faces;
        for (std::size_t k = 0; k < dim; ++k) {
            theta(static_cast<Eigen::Index>(k)) = axes[k][idx[k]];
            if (idx[k] == 0) faces.push_back({static_cast<int>(k), 0});
            if (idx[k] + 1 == axes[k].size()) faces.push_back({static_cast<int>(k), 1});
        }
        if (faces.empty()) {
            set.interior.push_back(theta);
        } else {
            set.boundary.push_back({theta, std::move(faces)});
        }
    }
    return set;
}

/// Number of knot-grid cells (closed) that contain no collocation point.
inline std::size_t cells_without_points(const std::vector<KnotVector>& field_bases, const CollocationSet& set) {
    const nurbs::KnotGrid grid(field_bases);
    const auto intervals = grid.intervals();
    const auto dim = intervals.size();

    std::vector<const Vec*> all;
    for (const auto& p : set.interior) all.push_back(&p);
    for (const auto& p : set.boundary) all.push_back(&p.theta);

    std::size_t total = 1;
    for (const auto& iv : intervals) total *= iv.size();
    std::vector<bool> hit(total, false);
    for (const Vec* p : all) {
        // a point on a shared cell face counts for every adjacent cell
        std::vector<std::vector<std::size_t>> owners(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            const double u = (*p)(static_cast<Eigen::Index>(k));
            for (std::size_t c = 0; c < intervals[k].size(); ++c) {
                if (u >= intervals[k][c].first && u <= intervals[k][c].second) owners[k].push_back(c);
            }
        }
        std::vector<std::size_t> pick(dim, 0);
        while (true) {
            std::size_t flat = 0;
            bool any = true;
            for (std::size_t k = 0; k < dim; ++k) {
                if (owners[k].empty()) {
                    any = false;
                    break;
                }
                flat = flat * intervals[k].size() + owners[k][pick[k]];
            }
            if (!any) break;
            hit[flat] = true;
            std::size_t k = dim;
            while (k-- > 0) {
                if (++pick[k] < owners[k].size()) break;
                pick[k] = 0;
            }
            if (k == static_cast<std::size_t>(-1)) break;
        }
    }
    return static_cast<std::size_t>(std::count(hit.begin(), hit.end(), false));
}

} // namespace igal::collocation
