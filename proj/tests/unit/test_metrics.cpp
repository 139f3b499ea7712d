#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "igal/bench/runner.hpp"
#include "igal/bvp/examples.hpp"
#include "igal/collocation/field.hpp"
#include "igal/metrics/errors.hpp"
#include "igal/metrics/quadrature.hpp"
#include "oracles/interpolation.hpp"

using igal::Mat;
using igal::Vec;
using igal::make_vec;
using igal::nurbs::TensorSpline;
namespace bvp = igal::bvp;
namespace bench = igal::bench;
namespace collocation = igal::collocation;
namespace metrics = igal::metrics;

namespace {

/// -T'' + T = f on [0, 1] with the cubic T = x^3 - x, which every cubic field reproduces.
bvp::BvpDefinition cubic_problem() {
    auto p = bvp::example_1d_dirichlet();
    p.id = "cubic";
    p.analytic = [](const Vec& x) {
        const double t = x(0);
        return bvp::FieldDerivatives{bvp::detail::scalar(t * t * t - t, make_vec({3 * t * t - 1}), Mat::Constant(1, 1, 6 * t))};
    };
    p.source = [](const Vec& x) { return make_vec({-6 * x(0) + x(0) * x(0) * x(0) - x(0)}); };
    bvp::detail::scalar_quantities(p);
    return p;
}

TensorSpline interpolant(const bvp::BvpDefinition& p, int n) {
    const auto field = collocation::build_field(p, {n});
    const auto c = oracle::interpolate(field.basis(0).knots(), field.basis(0).degree(),
                                       [&](double x) { return p.analytic(make_vec({x}))[0].value; });
    return field.with_coefficients(c);
}

TensorSpline solved_field(const bvp::BvpDefinition& p, bench::Method method, const std::vector<int>& n,
                          const std::vector<int>& m) {
    auto field = collocation::build_field(p, n);
    const auto pts = collocation::generate_collocation_points(field.bases(), {collocation::SchemeKind::Greville, m});
    const auto sys = collocation::assemble(p, field, pts, {});
    const auto r = bench::solve_system(sys, method, bench::resolve_imposition(p, bench::BoundaryImposition::Auto));
    return field.with_coefficients(std::vector<double>(r.x.data(), r.x.data() + r.x.size()));
}

} // namespace

TEST(Quadrature, GaussLegendreExactness) {
    for (int n = 1; n <= 12; ++n) {
        const auto q = metrics::gauss_legendre(n);
        ASSERT_EQ(q.nodes.size(), static_cast<std::size_t>(n));
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += q.weights[static_cast<std::size_t>(i)] * std::pow(q.nodes[static_cast<std::size_t>(i)], k);
            const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
            EXPECT_NEAR(s, exact, 1e-14) << "n=" << n << " k=" << k;
        }
    }
    EXPECT_THROW(metrics::gauss_legendre(0), igal::PreconditionError);
}

TEST(RelativeError, DenominatorOfExampleOne) {
    const auto p = bvp::example_1d_dirichlet();
    const auto field = interpolant(p, 10);
    EXPECT_NEAR(metrics::error_integrals(p, field, 6).quantity_ref[0], 0.5, 1e-12);
}

TEST(RelativeError, ExactSplineSolutionIsZero) {
    const auto p = cubic_problem();
    const auto field = interpolant(p, 8);
    EXPECT_LT(metrics::relative_solution_error(p, field, 5), 1e-12);
    EXPECT_LT(metrics::relative_operator_error(p, field, 5), 1e-10);
    for (const auto& s : metrics::absolute_error_field(p, field, {101})) EXPECT_LT(s.error(0), 1e-13);
}

TEST(RelativeError, IdentityOperatorMatchesSolutionError) {
    auto p = bvp::example_1d_dirichlet();
    p.interior = bvp::operators::trace_value(1);
    auto analytic = p.analytic;
    p.source = [analytic](const Vec& x) { return make_vec({analytic(x)[0].value}); };
    const auto field = interpolant(bvp::example_1d_dirichlet(), 7);
    EXPECT_EQ(metrics::relative_operator_error(p, field, 5), metrics::relative_solution_error(p, field, 5));
}

TEST(RelativeError, OperatorErrorDeclinesAlongIgacRefinement) {
    const auto p = bvp::example_1d_dirichlet();
    double previous = INFINITY;
    for (int n = 6; n <= 14; ++n) {
        const double e = metrics::relative_operator_error(p, solved_field(p, bench::Method::Igac, {n}, {n}), 5);
        EXPECT_LE(e, 1.5 * previous) << "n=" << n;
        previous = e;
    }
}

TEST(RelativeError, QuadratureOrderConverged) {
    struct Case {
        const char* id;
        std::vector<int> n, m;
    };
    const Case cases[] = {{"I", {15}, {17}}, {"II", {12, 12}, {14, 14}}, {"III", {6, 6, 6}, {6, 6, 6}},
                          {"IV", {11, 11}, {13, 13}}, {"V", {10}, {16}}};
    for (const auto& c : cases) {
        const auto p = bvp::example_by_id(c.id);
        const auto field = solved_field(p, bench::Method::Igal, c.n, c.m);
        const int q = metrics::default_quadrature_order(field) + 2;
        const auto a = metrics::relative_solution_errors(p, field, q);
        const auto b = metrics::relative_solution_errors(p, field, q + 2);
        for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-8 * b[i]) << c.id << " quantity " << i;
    }
}

TEST(RelativeError, JointScalingEquivariance) {
    const double alpha = -3.5;
    const auto p = bvp::example_1d_dirichlet();
    auto scaled = p;
    scaled.analytic = [&p, alpha](const Vec& x) {
        auto f = p.analytic(x);
        f[0].value *= alpha;
        f[0].grad *= alpha;
        f[0].hess *= alpha;
        return f;
    };
    scaled.source = [&p, alpha](const Vec& x) { return Vec(alpha * p.source(x)); };
    bvp::detail::scalar_quantities(scaled);
    const auto field = solved_field(p, bench::Method::Igal, {10}, {16});
    std::vector<double> c = field.coefficients();
    for (auto& v : c) v *= alpha;
    const auto sfield = field.with_coefficients(c);

    EXPECT_NEAR(metrics::relative_solution_error(scaled, sfield, 5), metrics::relative_solution_error(p, field, 5), 1e-12);
    EXPECT_NEAR(metrics::relative_operator_error(scaled, sfield, 5), metrics::relative_operator_error(p, field, 5), 1e-12);
    const auto a = metrics::absolute_error_field(p, field, {41});
    const auto b = metrics::absolute_error_field(scaled, sfield, {41});
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(b[i].error(0), std::abs(alpha) * a[i].error(0), 1e-12);
}

TEST(ErrorReport, BeamReportsThreeStresses) {
    const auto p = bvp::example_beam();
    const auto field = solved_field(p, bench::Method::Igal, {11, 11}, {18, 18});
    const auto r = metrics::error_report(p, field, 0, {21, 21});
    ASSERT_EQ(r.e_T.size(), 3u);
    ASSERT_EQ(r.max_abs.size(), 3u);
    EXPECT_EQ(r.quantities, (std::vector<std::string>{"sigma_x", "sigma_y", "tau_xy"}));
    EXPECT_FALSE(r.e_DT.has_value());
    for (double e : r.e_T) EXPECT_GE(e, 0.0);
    EXPECT_EQ(r.quadrature_order, 5);
}

TEST(ErrorReport, ExampleOneGoldens) {
    const auto p = bvp::example_1d_dirichlet();
    const auto c = metrics::error_report(p, solved_field(p, bench::Method::Igac, {10}, {10}));
    const auto l = metrics::error_report(p, solved_field(p, bench::Method::Igal, {10}, {16}));
    EXPECT_NEAR(c.e_T[0], 0.0598, 0.25 * 0.0598);
    EXPECT_NEAR(l.e_T[0], 0.0018, 0.25 * 0.0018);
    EXPECT_NEAR(c.max_abs[0], 0.0607, 0.25 * 0.0607);
    EXPECT_NEAR(l.max_abs[0], 0.0028, 0.25 * 0.0028);
}

TEST(ErrorReport, UndefinedMetrics) {
    auto p = bvp::example_1d_dirichlet();
    const auto field = interpolant(p, 8);
    auto none = p;
    none.analytic_quantities = nullptr;
    EXPECT_THROW(metrics::relative_solution_error(none, field, 5), igal::UndefinedMetricError);
    EXPECT_THROW(metrics::absolute_error_field(none, field, {11}), igal::UndefinedMetricError);
    auto zero = p;
    zero.analytic_quantities = [](const Vec&) { return make_vec({0.0}); };
    EXPECT_THROW(metrics::relative_solution_error(zero, field, 5), igal::UndefinedMetricError);
    zero.source = [](const Vec&) { return make_vec({0.0}); };
    EXPECT_THROW(metrics::relative_operator_error(zero, field, 5), igal::UndefinedMetricError);
}
