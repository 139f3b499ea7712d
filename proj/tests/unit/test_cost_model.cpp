#include <gtest/gtest.h>

#include <cmath>

#include "igal/linalg/cost_model.hpp"

namespace linalg = igal::linalg;
using linalg::ProblemKind;

namespace {

struct Cell {
    int dim;
    double a, b;         // primary form a (p+1)^d + b
    double alt_a, alt_b; // bracketed form, equal to the primary one where nothing is bracketed
};

double closed_form(double a, double b, int p, int d) { return a * std::pow(p + 1.0, d) + b; }

// Formation cost per collocation point, transcribed row by row.
const Cell kFirst[] = {{1, 1, 0, 1, 0}, {2, 5, 4, 5, 4}, {3, 12, 16, 12, 20}};
const Cell kSecond[] = {{1, 3, 0, 3, 0}, {2, 24, 16, 24, 20}, {3, 87, 140, 87, 140}};
const Cell kBasis[] = {{1, 35, 1, 35, 2}, {2, 124, 33, 124, 37}, {3, 302, 219, 302, 223}};
const Cell kNavier[] = {{1, 1, 0, 1, 0}, {2, 12, 0, 12, 0}, {3, 21, 0, 21, 0}};
const Cell kScalarTotal[] = {{1, 35, 1, 35, 2}, {2, 125, 33, 125, 37}, {3, 304, 219, 304, 223}};
const Cell kVectorTotal[] = {{1, 36, 1, 36, 2}, {2, 134, 33, 136, 37}, {3, 323, 219, 323, 223}};

} // namespace

TEST(CostModel, QuotedGoldens) {
    EXPECT_DOUBLE_EQ(linalg::flop_cost_model(1, 3, 10, 10, ProblemKind::Scalar).per_point_total, 141.0);
    EXPECT_DOUBLE_EQ(linalg::flop_cost_model(2, 3, 10, 10, ProblemKind::Vector).per_point_total, 2177.0);
    EXPECT_DOUBLE_EQ(linalg::flop_cost_model(2, 3, 10, 10, ProblemKind::Vector, true).per_point_total, 136.0 * 16 + 37);
    EXPECT_DOUBLE_EQ(linalg::flop_cost_model(1, 3, 10, 16, ProblemKind::Scalar).igal_solve, 1600.0 + 1000.0 / 3.0);
}

TEST(CostModel, EveryFormationCell) {
    for (int p = 0; p <= 6; ++p) {
        for (bool br : {false, true}) {
            for (int i = 0; i < 3; ++i) {
                const int d = i + 1;
                auto pick = [&](const Cell& c) { return br ? closed_form(c.alt_a, c.alt_b, p, d) : closed_form(c.a, c.b, p, d); };
                const auto s = linalg::flop_cost_model(d, p, 5, 7, ProblemKind::Scalar, br);
                const auto v = linalg::flop_cost_model(d, p, 5, 7, ProblemKind::Vector, br);
                EXPECT_DOUBLE_EQ(s.first_derivatives, pick(kFirst[i]));
                EXPECT_DOUBLE_EQ(s.second_derivatives, pick(kSecond[i]));
                EXPECT_DOUBLE_EQ(s.basis_total, pick(kBasis[i]));
                EXPECT_FALSE(s.navier_global.has_value());
                ASSERT_TRUE(v.navier_global.has_value());
                EXPECT_DOUBLE_EQ(*v.navier_global, pick(kNavier[i]));
                EXPECT_DOUBLE_EQ(s.per_point_total, pick(kScalarTotal[i]));
                EXPECT_DOUBLE_EQ(v.per_point_total, pick(kVectorTotal[i]));
            }
        }
    }
}

TEST(CostModel, EverySolveCell) {
    for (long long n : {3LL, 8LL, 13LL}) {
        for (long long m : {n, n + 4, 2 * n}) {
            const double nd[] = {double(n), double(n * n), double(n * n * n)};
            const double md[] = {double(m), double(m * m), double(m * m * m)};
            for (int i = 0; i < 3; ++i) {
                const auto c = linalg::flop_cost_model(i + 1, 3, n, m, ProblemKind::Scalar);
                EXPECT_DOUBLE_EQ(c.igac_solve, 2.0 * nd[i] * nd[i] * nd[i] / 3.0);
                EXPECT_DOUBLE_EQ(c.igal_solve, md[i] * nd[i] * nd[i] + nd[i] * nd[i] * nd[i] / 3.0);
            }
        }
    }
}

TEST(CostModel, RejectsInvalidArguments) {
    EXPECT_THROW(linalg::flop_cost_model(4, 3, 5, 5, ProblemKind::Scalar), igal::PreconditionError);
    EXPECT_THROW(linalg::flop_cost_model(2, -1, 5, 5, ProblemKind::Scalar), igal::PreconditionError);
    EXPECT_THROW(linalg::flop_cost_model(2, 3, 0, 5, ProblemKind::Scalar), igal::PreconditionError);
}

TEST(CostModel, FormulaText) {
    const auto t = linalg::point_cost_table(2, ProblemKind::Vector);
    EXPECT_EQ(t.stiffness_total.to_string(2), "134 [136] (p+1)^2 + 33 [37]");
    EXPECT_EQ(linalg::point_cost_table(1, ProblemKind::Scalar).first_derivatives.to_string(1), "(p+1)");
}
