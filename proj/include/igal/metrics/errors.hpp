#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "igal/bvp/definition.hpp"
#include "igal/collocation/field.hpp"
#include "igal/error.hpp"
#include "igal/geometry/geometry_map.hpp"
#include "igal/metrics/quadrature.hpp"
#include "igal/nurbs/knot_vector.hpp"
#include "igal/nurbs/tensor_spline.hpp"
#include "igal/types.hpp"
#include "igal/util/parallel.hpp"

namespace igal::metrics {

using bvp::BvpDefinition;
using nurbs::TensorSpline;

/// Quadrature order used when none is given: field degree + 2.
inline int default_quadrature_order(const TensorSpline& field) { return field.min_degree() + 2; }

/// Visits every Gauss point of every knot cell of `field` as (theta, weight in parametric
/// measure). Cells are enumerated lexicographically, nodes likewise within a cell.
template <typename Visit>
void for_each_cell(const TensorSpline& field, int order, Visit&& visit) {
    const auto rule = gauss_legendre(order);
    const auto intervals = nurbs::KnotGrid(field.bases()).intervals();
    const auto dim = intervals.size();
    std::size_t cells = 1;
    for (const auto& iv : intervals) cells *= iv.size();
    visit.begin(cells);
    util::parallel_for(cells, [&](std::size_t cell) {
        std::vector<std::size_t> ci(dim);
        std::size_t rem = cell;
        for (std::size_t k = dim; k-- > 0;) {
            ci[k] = rem % intervals[k].size();
            rem /= intervals[k].size();
        }
        const std::size_t q = rule.nodes.size();
        std::size_t nodes = 1;
        for (std::size_t k = 0; k < dim; ++k) nodes *= q;
        Vec theta(static_cast<Eigen::Index>(dim));
        for (std::size_t node = 0; node < nodes; ++node) {
            std::size_t r = node;
            double w = 1.0;
            for (std::size_t k = dim; k-- > 0;) {
                const std::size_t j = r % q;
                r /= q;
                const auto [a, b] = intervals[k][ci[k]];
                theta(static_cast<Eigen::Index>(k)) = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[j];
                w *= 0.5 * (b - a) * rule.weights[j];
            }
            visit(cell, theta, w);
        }
    });
}

/// Integrals of squared differences and squared references of the reported quantities and
/// of the interior operator, accumulated per cell and reduced in cell order.
struct ErrorIntegrals {
    std::vector<double> quantity_diff;
    std::vector<double> quantity_ref;
    double operator_diff = 0.0;
    double operator_ref = 0.0;
};

inline ErrorIntegrals error_integrals(const BvpDefinition& problem, const TensorSpline& field, int order) {
    if (!problem.analytic_quantities || !problem.recover_quantities) {
        throw UndefinedMetricError("example " + problem.id + " has no analytic solution");
    }
    const std::size_t nq = problem.quantity_names.size();
    struct Cell {
        std::vector<double> qd, qr;
        double od = 0.0, orf = 0.0;
    };
    std::vector<Cell> cells;
    struct Visitor {
        const BvpDefinition& problem;
        const TensorSpline& field;
        std::vector<Cell>& cells;
        std::size_t nq;
        void begin(std::size_t n) { cells.assign(n, Cell{std::vector<double>(nq, 0.0), std::vector<double>(nq, 0.0)}); }
        void operator()(std::size_t cell, const Vec& theta, double w) {
            const auto pb = geometry::pullback(problem.geometry, theta);
            const double dw = w * std::abs(pb.det);
            const auto fd = collocation::field_derivatives(pb, field, problem.interior.order);
            const Vec exact = problem.analytic_quantities(pb.point);
            const Vec approx = problem.recover_quantities(fd);
            auto& c = cells[cell];
            for (std::size_t i = 0; i < nq; ++i) {
                const auto k = static_cast<Eigen::Index>(i);
                c.qd[i] += dw * (exact(k) - approx(k)) * (exact(k) - approx(k));
                c.qr[i] += dw * exact(k) * exact(k);
            }
            const Vec f = problem.source(pb.point);
            const Vec Df = problem.interior.apply_to_field(fd, Vec());
            c.od += dw * (f - Df).squaredNorm();
            c.orf += dw * f.squaredNorm();
        }
    };
    for_each_cell(field, order, Visitor{problem, field, cells, nq});

    ErrorIntegrals out;
    out.quantity_diff.assign(nq, 0.0);
    out.quantity_ref.assign(nq, 0.0);
    for (const auto& c : cells) {
        for (std::size_t i = 0; i < nq; ++i) {
            out.quantity_diff[i] += c.qd[i];
            out.quantity_ref[i] += c.qr[i];
        }
        out.operator_diff += c.od;
        out.operator_ref += c.orf;
    }
    return out;
}

namespace detail {

inline double relative(double diff, double ref, const std::string& what) {
    if (!(ref > 0.0)) throw UndefinedMetricError(what + ": reference integral is zero");
    return std::sqrt(diff / ref);
}

} // namespace detail

/// sqrt(int |q - q_r|^2 dx / int |q|^2 dx) for each reported quantity.
inline std::vector<double> relative_solution_errors(const BvpDefinition& problem, const TensorSpline& field,
                                                    int order) {
    const auto I = error_integrals(problem, field, order);
    std::vector<double> e;
    for (std::size_t i = 0; i < I.quantity_diff.size(); ++i) {
        e.push_back(detail::relative(I.quantity_diff[i], I.quantity_ref[i], problem.quantity_names[i]));
    }
    return e;
}

/// Relative solution error over all reported quantities together.
inline double relative_solution_error(const BvpDefinition& problem, const TensorSpline& field, int order) {
    const auto I = error_integrals(problem, field, order);
    double d = 0.0, r = 0.0;
    for (std::size_t i = 0; i < I.quantity_diff.size(); ++i) {
        d += I.quantity_diff[i];
        r += I.quantity_ref[i];
    }
    return detail::relative(d, r, "solution");
}

/// sqrt(int |D T - D T_r|^2 dx / int |D T|^2 dx), with D T taken as the source term.
inline double relative_operator_error(const BvpDefinition& problem, const TensorSpline& field, int order) {
    const auto I = error_integrals(problem, field, order);
    return detail::relative(I.operator_diff, I.operator_ref, "operator");
}

struct ErrorSample {
    Vec theta;
    Vec x;
    Vec error; ///< |q - q_r| per quantity
};

/// |q(x) - q_r(x)| on the image of a parametric lattice with `counts` points per
/// direction (both ends included).
inline std::vector<ErrorSample> absolute_error_field(const BvpDefinition& problem, const TensorSpline& field,
                                                     const std::vector<int>& counts) {
    if (!problem.analytic_quantities || !problem.recover_quantities) {
        throw UndefinedMetricError("example " + problem.id + " has no analytic solution");
    }
    const int dim = field.dim();
    if (static_cast<int>(counts.size()) != dim) throw PreconditionError("sample counts do not match dimension");
    std::size_t total = 1;
    for (int c : counts) {
        if (c < 2) throw PreconditionError("sample lattice needs at least 2 points per direction");
        total *= static_cast<std::size_t>(c);
    }
    const int order = std::min(problem.interior.order, 1);
    std::vector<ErrorSample> out(total);
    util::parallel_for(total, [&](std::size_t flat) {
        Vec theta(dim);
        std::size_t rem = flat;
        for (int k = dim; k-- > 0;) {
            const auto n = static_cast<std::size_t>(counts[static_cast<std::size_t>(k)]);
            const auto& kv = field.basis(k);
            const auto i = rem % n;
            rem /= n;
            theta(k) = i + 1 == n ? kv.back() : kv.front() + (kv.back() - kv.front()) * static_cast<double>(i) / (n - 1.0);
        }
        const auto pb = geometry::pullback(problem.geometry, theta);
        const auto fd = collocation::field_derivatives(pb, field, order);
        out[flat] = {theta, pb.point, (problem.analytic_quantities(pb.point) - problem.recover_quantities(fd)).cwiseAbs()};
    });
    return out;
}

/// Default sample lattice per direction.
inline std::vector<int> default_sample_counts(int dim) {
    switch (dim) {
    case 1: return {401};
    case 2: return {81, 81};
    default: return {31, 31, 31};
    }
}

/// Largest sampled absolute error per quantity.
inline std::vector<double> max_abs_errors(const std::vector<ErrorSample>& samples) {
    std::vector<double> m;
    for (const auto& s : samples) {
        if (m.empty()) m.assign(static_cast<std::size_t>(s.error.size()), 0.0);
        for (Eigen::Index i = 0; i < s.error.size(); ++i) {
            m[static_cast<std::size_t>(i)] = std::max(m[static_cast<std::size_t>(i)], s.error(i));
        }
    }
    return m;
}

/// Errors of one solution.
struct ErrorReport {
    std::vector<std::string> quantities;
    std::vector<double> e_T;          ///< per quantity
    std::optional<double> e_DT;       ///< empty when the operator reference vanishes
    std::vector<double> max_abs;      ///< per quantity
    std::vector<ErrorSample> samples;
    int quadrature_order = 0;
};

inline ErrorReport error_report(const BvpDefinition& problem, const TensorSpline& field, int quadrature_order = 0,
                                std::vector<int> sample_counts = {}, bool keep_samples = false) {
    ErrorReport r;
    r.quadrature_order = quadrature_order > 0 ? quadrature_order : default_quadrature_order(field);
    r.quantities = problem.quantity_names;
    const auto I = error_integrals(problem, field, r.quadrature_order);
    for (std::size_t i = 0; i < I.quantity_diff.size(); ++i) {
        r.e_T.push_back(detail::relative(I.quantity_diff[i], I.quantity_ref[i], problem.quantity_names[i]));
    }
    if (I.operator_ref > 0.0) r.e_DT = std::sqrt(I.operator_diff / I.operator_ref);
    if (sample_counts.empty()) sample_counts = default_sample_counts(field.dim());
    auto samples = absolute_error_field(problem, field, sample_counts);
    r.max_abs = max_abs_errors(samples);
    if (keep_samples) r.samples = std::move(samples);
    return r;
}

} // namespace igal::metrics
