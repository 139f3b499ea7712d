#include <gtest/gtest.h>

#include <random>

#include "igal/bvp/examples.hpp"
#include "igal/nurbs/tensor_spline.hpp"

using igal::Vec;
using igal::make_vec;
using igal::nurbs::KnotVector;
using igal::nurbs::TensorSpline;
namespace nurbs = igal::nurbs;
namespace geo = igal::bvp::geometry_data;

namespace {

TensorSpline random_spline(std::mt19937& rng, int dim, int components, bool rational) {
    std::uniform_real_distribution<double> U(-1.0, 1.0), W(0.5, 2.0);
    std::vector<KnotVector> bases;
    const std::vector<std::vector<double>> interiors = {{0.3, 0.5}, {0.5}, {0.2, 0.4, 0.4, 0.9}};
    for (int k = 0; k < dim; ++k) bases.push_back(KnotVector::clamped(k == 1 ? 2 : 3, interiors[static_cast<std::size_t>(k)]));
    std::size_t n = 1;
    for (const auto& b : bases) n *= static_cast<std::size_t>(b.basis_count());
    std::vector<double> c(n * static_cast<std::size_t>(components)), w;
    for (auto& v : c) v = U(rng);
    if (rational) {
        w.resize(n);
        for (auto& v : w) v = W(rng);
    }
    return TensorSpline(bases, components, c, w);
}

Vec random_theta(std::mt19937& rng, int dim) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    Vec t(dim);
    for (int k = 0; k < dim; ++k) t(k) = U(rng);
    return t;
}

} // namespace

TEST(TensorSpline, ShapeAndWeightValidation) {
    const auto kv = KnotVector::clamped(3, {});
    EXPECT_THROW(TensorSpline({kv}, 1, {0, 1, 2}), igal::PreconditionError);
    EXPECT_THROW(TensorSpline({kv}, 1, {0, 1, 2, 3}, {1, 1, 0, 1}), igal::PreconditionError);
    EXPECT_THROW(TensorSpline({kv}, 1, {0, 1, 2, 3}, {1, 1}), igal::PreconditionError);
    EXPECT_NO_THROW(TensorSpline({kv, kv}, 2, std::vector<double>(32, 0.0)));
}

TEST(TensorSpline, IdentityCurveAndAnnulusCorners) {
    const auto line = geo::unit_interval().spline();
    EXPECT_NEAR(nurbs::evaluate(line, make_vec({0.4}), 0).value(0), 0.4, 1e-15);

    const auto ann = geo::quarter_annulus().spline();
    const Vec a = nurbs::evaluate(ann, make_vec({0.0, 0.0}), 0).value;
    const Vec b = nurbs::evaluate(ann, make_vec({0.0, 1.0}), 0).value;
    const Vec c = nurbs::evaluate(ann, make_vec({1.0, 0.0}), 0).value;
    const Vec d = nurbs::evaluate(ann, make_vec({1.0, 1.0}), 0).value;
    // first direction runs along the radius, second sweeps the arc
    EXPECT_NEAR((a - make_vec({1.0, 0.0})).norm(), 0.0, 1e-14);
    EXPECT_NEAR((b - make_vec({0.0, 1.0})).norm(), 0.0, 1e-14);
    EXPECT_NEAR((c - make_vec({4.0, 0.0})).norm(), 0.0, 1e-14);
    EXPECT_NEAR((d - make_vec({0.0, 4.0})).norm(), 0.0, 1e-14);
    // the rational arc is exact
    std::mt19937 rng(1);
    for (int s = 0; s < 50; ++s) {
        const Vec t = random_theta(rng, 2);
        const Vec x = nurbs::evaluate(ann, t, 0).value;
        EXPECT_NEAR(x.norm(), 1.0 + 3.0 * t(0), 1e-12);
    }
}

TEST(TensorSpline, RationalPartitionOfUnityAndLocalSupport) {
    std::mt19937 rng(2);
    for (int dim = 1; dim <= 3; ++dim) {
        const auto s = random_spline(rng, dim, 1, true);
        std::size_t expected = 1;
        for (const auto& b : s.bases()) expected *= static_cast<std::size_t>(b.degree() + 1);
        for (int k = 0; k < 200; ++k) {
            const auto basis = nurbs::local_basis(s, random_theta(rng, dim), 2);
            EXPECT_EQ(basis.size(), expected);
            double sum = 0.0;
            Vec g = Vec::Zero(dim);
            igal::Mat h = igal::Mat::Zero(dim, dim);
            for (std::size_t a = 0; a < basis.size(); ++a) {
                sum += basis.value[a];
                g += basis.grad[a];
                h += basis.hess[a];
            }
            EXPECT_NEAR(sum, 1.0, 1e-12);
            EXPECT_LT(g.norm(), 1e-9);
            EXPECT_LT(h.norm(), 1e-8);
        }
    }
}

TEST(TensorSpline, DomainAndDerivativeErrors) {
    const auto ann = geo::quarter_annulus().spline();
    EXPECT_THROW(nurbs::evaluate(ann, make_vec({1.2, 0.5}), 0), igal::DomainError);
    EXPECT_THROW(nurbs::evaluate(ann, make_vec({0.5, 0.5}), 3), igal::UnsupportedDerivativeError);
    EXPECT_THROW(nurbs::local_basis(ann, make_vec({0.5}), 0), igal::DomainError);
}

TEST(TensorSpline, DerivativesMatchFiniteDifferences) {
    std::mt19937 rng(4);
    std::vector<TensorSpline> splines = {geo::quarter_annulus().spline(), random_spline(rng, 1, 1, true),
                                         random_spline(rng, 2, 2, true), random_spline(rng, 3, 1, true)};
    const double h = 1e-6;
    for (const auto& s : splines) {
        const int d = s.dim();
        for (int trial = 0; trial < 10; ++trial) {
            Vec t = random_theta(rng, d);
            for (int k = 0; k < d; ++k) t(k) = 0.05 + 0.9 * t(k);
            const auto sp = nurbs::evaluate(s, t, 2);
            for (int k = 0; k < d; ++k) {
                Vec tp = t, tm = t;
                tp(k) += h;
                tm(k) -= h;
                const auto p = nurbs::evaluate(s, tp, 1);
                const auto m = nurbs::evaluate(s, tm, 1);
                for (int c = 0; c < s.components(); ++c) {
                    const double fd = (p.value(c) - m.value(c)) / (2 * h);
                    EXPECT_NEAR(sp.jacobian(c, k), fd, 1e-6 * (1.0 + std::abs(fd)));
                    for (int l = 0; l < d; ++l) {
                        const double fd2 = (p.jacobian(c, l) - m.jacobian(c, l)) / (2 * h);
                        EXPECT_NEAR(sp.hessian[static_cast<std::size_t>(c)](l, k), fd2, 1e-6 * (1.0 + std::abs(fd2)));
                    }
                }
            }
        }
    }
}

TEST(KnotInsertion, BoehmCoefficients) {
    const auto line = geo::unit_interval().spline();
    const auto r = nurbs::insert_knot(line, 0, 0.5);
    const double expect[] = {0.0, 1.0 / 6.0, 0.5, 5.0 / 6.0, 1.0};
    ASSERT_EQ(r.coefficients().size(), 5u);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(r.coefficients()[static_cast<std::size_t>(i)], expect[i], 1e-15);
    for (double u : {0.1, 0.5, 0.9}) {
        EXPECT_NEAR(nurbs::evaluate(r, make_vec({u}), 0).value(0), nurbs::evaluate(line, make_vec({u}), 0).value(0), 1e-12);
    }
    EXPECT_THROW(nurbs::insert_knot(line, 0, 1.0), igal::InvalidRefinementError);
    auto twice = nurbs::insert_knot(nurbs::insert_knot(r, 0, 0.5), 0, 0.5);
    EXPECT_THROW(nurbs::insert_knot(twice, 0, 0.5), igal::InvalidRefinementError);
}

TEST(KnotInsertion, StraightLineStaysCollinear) {
    // segment from (1, 2) to (4, -1) as a cubic planar curve
    const auto kv = KnotVector::clamped(3, {});
    std::vector<double> c;
    for (int i = 0; i < 4; ++i) {
        c.push_back(1.0 + i);
        c.push_back(2.0 - i);
    }
    const TensorSpline curve({kv}, 2, c);
    const auto r = nurbs::refine(curve, 0, {0.3, 0.5, 0.8});
    for (double u : nurbs::greville_abscissae(r.basis(0))) {
        const Vec x = nurbs::evaluate(r, make_vec({u}), 0).value;
        EXPECT_NEAR(x(0) + x(1), 3.0, 1e-12);
    }
}

TEST(KnotInsertion, EvaluationInvariantForRandomSplines) {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> U(0.01, 0.99);
    for (int dim = 1; dim <= 3; ++dim) {
        for (bool rational : {false, true}) {
            const auto s = random_spline(rng, dim, 2, rational);
            auto r = s;
            for (int axis = 0; axis < dim; ++axis) r = nurbs::insert_knot(r, axis, U(rng));
            r = nurbs::insert_knot(r, 0, 0.5);
            EXPECT_EQ(r.basis(0).basis_count(), s.basis(0).basis_count() + 2);
            for (int k = 0; k < 100; ++k) {
                const Vec t = random_theta(rng, dim);
                const auto a = nurbs::evaluate(s, t, 2);
                const auto b = nurbs::evaluate(r, t, 2);
                EXPECT_LT((a.value - b.value).norm(), 1e-10);
                EXPECT_LT((a.jacobian - b.jacobian).norm(), 1e-9);
            }
        }
    }
}

TEST(KnotInsertion, AnnulusGeometryInvariant) {
    const auto ann = geo::quarter_annulus().spline();
    const auto r = nurbs::refine_to(ann, {nurbs::uniform_refine(ann.basis(0), 11), nurbs::uniform_refine(ann.basis(1), 11)});
    EXPECT_EQ(r.basis_count(), 225u);
    EXPECT_TRUE(r.is_rational());
    std::mt19937 rng(10);
    for (int k = 0; k < 100; ++k) {
        const Vec t = random_theta(rng, 2);
        EXPECT_LT((nurbs::evaluate(ann, t, 0).value - nurbs::evaluate(r, t, 0).value).norm(), 1e-10);
    }
}
