#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "igal/error.hpp"

namespace igal::linalg {

enum class ProblemKind { Scalar, Vector };

inline const char* to_string(ProblemKind k) { return k == ProblemKind::Scalar ? "scalar" : "vector"; }

/// a (p+1)^d + b, with the alternative constants of the earlier flop count where they differ.
struct CostFormula {
    double coefficient = 0.0;
    double constant = 0.0;
    std::optional<double> alt_coefficient;
    std::optional<double> alt_constant;

    double evaluate(int degree, int dim, bool bracketed = false) const {
        const double a = bracketed && alt_coefficient ? *alt_coefficient : coefficient;
        const double b = bracketed && alt_constant ? *alt_constant : constant;
        return a * std::pow(degree + 1.0, dim) + b;
    }

    std::string to_string(int dim) const {
        std::ostringstream s;
        if (coefficient != 1.0) s << coefficient;
        if (alt_coefficient) s << " [" << *alt_coefficient << "]";
        s << (coefficient != 1.0 ? " " : "") << "(p+1)";
        if (dim > 1) s << "^" << dim;
        if (constant != 0.0) s << " + " << constant;
        if (alt_constant) s << " [" << *alt_constant << "]";
        return s.str();
    }
};

/// Per-collocation-point formation cost, one formula per stage.
struct PointCostTable {
    CostFormula first_derivatives;
    CostFormula second_derivatives;
    CostFormula basis_total;
    std::optional<CostFormula> navier_global; ///< vector problems only
    CostFormula stiffness_total;
};

inline PointCostTable point_cost_table(int dim, ProblemKind kind) {
    const bool vec = kind == ProblemKind::Vector;
    PointCostTable t;
    switch (dim) {
    case 1:
        t.first_derivatives = {1, 0, {}, {}};
        t.second_derivatives = {3, 0, {}, {}};
        t.basis_total = {35, 1, {}, 2};
        if (vec) t.navier_global = CostFormula{1, 0, {}, {}};
        t.stiffness_total = vec ? CostFormula{36, 1, {}, 2} : CostFormula{35, 1, {}, 2};
        break;
    case 2:
        t.first_derivatives = {5, 4, {}, {}};
        t.second_derivatives = {24, 16, {}, 20};
        t.basis_total = {124, 33, {}, 37};
        if (vec) t.navier_global = CostFormula{12, 0, {}, {}};
        t.stiffness_total = vec ? CostFormula{134, 33, 136, 37} : CostFormula{125, 33, {}, 37};
        break;
    case 3:
        t.first_derivatives = {12, 16, {}, 20};
        t.second_derivatives = {87, 140, {}, {}};
        t.basis_total = {302, 219, {}, 223};
        if (vec) t.navier_global = CostFormula{21, 0, {}, {}};
        t.stiffness_total = vec ? CostFormula{323, 219, {}, 223} : CostFormula{304, 219, {}, 223};
        break;
    default: throw PreconditionError("cost model dimension must be 1, 2 or 3");
    }
    return t;
}

struct FlopCost {
    int dim = 1;
    int degree = 3;
    long long n = 0; ///< control points per direction
    long long m = 0; ///< collocation points per direction (IGA-L)
    ProblemKind kind = ProblemKind::Scalar;
    bool bracketed = false;

    double first_derivatives = 0.0;
    double second_derivatives = 0.0;
    double basis_total = 0.0;
    std::optional<double> navier_global;
    double per_point_total = 0.0; ///< local stiffness formation at one point
    double igac_solve = 0.0;      ///< 2 N^3 / 3, N = n^d
    double igal_solve = 0.0;      ///< M N^2 + N^3 / 3, M = m^d
};

/// Formation cost per collocation point and solve costs for n (IGA-C) and n, m (IGA-L)
/// points per direction.
inline FlopCost flop_cost_model(int dim, int degree, long long n, long long m, ProblemKind kind,
                                bool bracketed = false) {
    if (degree < 0) throw PreconditionError("degree must be non-negative");
    if (n < 1 || m < 1) throw PreconditionError("point counts must be positive");
    const auto t = point_cost_table(dim, kind);
    FlopCost c;
    c.dim = dim;
    c.degree = degree;
    c.n = n;
    c.m = m;
    c.kind = kind;
    c.bracketed = bracketed;
    c.first_derivatives = t.first_derivatives.evaluate(degree, dim, bracketed);
    c.second_derivatives = t.second_derivatives.evaluate(degree, dim, bracketed);
    c.basis_total = t.basis_total.evaluate(degree, dim, bracketed);
    if (t.navier_global) c.navier_global = t.navier_global->evaluate(degree, dim, bracketed);
    c.per_point_total = t.stiffness_total.evaluate(degree, dim, bracketed);
    const double N = std::pow(static_cast<double>(n), dim);
    const double M = std::pow(static_cast<double>(m), dim);
    c.igac_solve = 2.0 * N * N * N / 3.0;
    c.igal_solve = M * N * N + N * N * N / 3.0;
    return c;
}

} // namespace igal::linalg
