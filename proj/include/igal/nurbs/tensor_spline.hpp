#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <utility>
#include <vector>

#include "igal/error.hpp"
#include "igal/nurbs/knot_vector.hpp"
#include "igal/types.hpp"

namespace igal::nurbs {

/// Tensor-product NURBS object of parametric dimension 1..3 with `components`
/// coefficient values per basis function.
///
/// Storage is dense and lexicographic with the last axis running fastest; component
/// values are interleaved per basis function, so coefficient (a, c) sits at
/// `a * components + c`. Empty `weights` means unit weights (a polynomial B-spline).
class TensorSpline {
public:
    TensorSpline() = default;

    TensorSpline(std::vector<KnotVector> bases, int components, std::vector<double> coefficients,
                 std::vector<double> weights = {})
        : bases_(std::move(bases)), components_(components), coefficients_(std::move(coefficients)),
          weights_(std::move(weights)) {
        if (bases_.empty() || bases_.size() > 3) {
            throw PreconditionError("tensor spline dimension must be 1, 2 or 3");
        }
        if (components_ < 1 || components_ > 3) {
            throw PreconditionError("component count must be 1..3");
        }
        const std::size_t n = basis_count();
        if (coefficients_.size() != n * static_cast<std::size_t>(components_)) {
            std::ostringstream msg;
            msg << "coefficient array has " << coefficients_.size() << " entries, expected "
                << n * static_cast<std::size_t>(components_);
            throw PreconditionError(msg.str());
        }
        if (weights_.empty()) {
            weights_.assign(n, 1.0);
        }
        if (weights_.size() != n) {
            throw PreconditionError("weight array does not match basis count");
        }
        if (std::any_of(weights_.begin(), weights_.end(), [](double w) { return !(w > 0.0); })) {
            throw PreconditionError("weights must be positive");
        }
    }

    int dim() const noexcept { return static_cast<int>(bases_.size()); }
    int components() const noexcept { return components_; }
    const std::vector<KnotVector>& bases() const noexcept { return bases_; }
    const KnotVector& basis(int axis) const { return bases_.at(static_cast<std::size_t>(axis)); }
    const std::vector<double>& coefficients() const noexcept { return coefficients_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    std::vector<int> basis_counts() const {
        std::vector<int> n;
        for (const auto& kv : bases_) {
            n.push_back(kv.basis_count());
        }
        return n;
    }

    std::size_t basis_count() const {
        std::size_t n = 1;
        for (const auto& kv : bases_) {
            n *= static_cast<std::size_t>(kv.basis_count());
        }
        return n;
    }

    int min_degree() const {
        int p = bases_.front().degree();
        for (const auto& kv : bases_) {
            p = std::min(p, kv.degree());
        }
        return p;
    }

    bool is_rational() const {
        return std::any_of(weights_.begin(), weights_.end(), [](double w) { return w != 1.0; });
    }

    double coefficient(std::size_t basis, int component) const {
        return coefficients_[basis * static_cast<std::size_t>(components_) + static_cast<std::size_t>(component)];
    }

    std::size_t flat_index(const std::vector<int>& multi) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < bases_.size(); ++k) {
            idx = idx * static_cast<std::size_t>(bases_[k].basis_count()) + static_cast<std::size_t>(multi[k]);
        }
        return idx;
    }

    std::vector<int> multi_index(std::size_t flat) const {
        std::vector<int> multi(bases_.size());
        for (std::size_t k = bases_.size(); k-- > 0;) {
            const auto n = static_cast<std::size_t>(bases_[k].basis_count());
            multi[k] = static_cast<int>(flat % n);
            flat /= n;
        }
        return multi;
    }

    /// Same basis and weights with new coefficients (same layout).
    TensorSpline with_coefficients(std::vector<double> coefficients, int components) const {
        return TensorSpline(bases_, components, std::move(coefficients), weights_);
    }

    TensorSpline with_coefficients(std::vector<double> coefficients) const {
        return with_coefficients(std::move(coefficients), components_);
    }

    bool contains(const Vec& theta) const {
        for (std::size_t k = 0; k < bases_.size(); ++k) {
            if (!bases_[k].contains(theta(static_cast<Eigen::Index>(k)))) {
                return false;
            }
        }
        return true;
    }

private:
    std::vector<KnotVector> bases_;
    int components_ = 1;
    std::vector<double> coefficients_;
    std::vector<double> weights_;
};

/// Nonzero rational basis functions at one parameter with parametric derivatives.
struct LocalBasis {
    std::vector<std::size_t> index;
    std::vector<double> value;
    std::vector<Vec> grad;
    std::vector<Mat> hess;

    std::size_t size() const { return index.size(); }
};

/// Evaluates the (p+1)^d basis functions that can be nonzero at `theta`, with
/// derivatives up to `order` (at most 2), applying the quotient rule for weights.
inline LocalBasis local_basis(const TensorSpline& s, const Vec& theta, int order) {
    if (order < 0 || order > 2) {
        throw UnsupportedDerivativeError("rational derivatives are supported up to order 2");
    }
    const int d = s.dim();
    if (theta.size() != d) {
        throw DomainError("parameter tuple has wrong dimension");
    }
    std::vector<BasisTable> tables;
    for (int k = 0; k < d; ++k) {
        const auto& kv = s.basis(k);
        BasisTable t = basis_values(kv, theta(k), std::min(order, kv.degree()));
        // pad derivatives beyond the degree with exact zeros
        while (t.derivative_count() <= order) {
            t.values.emplace_back(t.values.front().size(), 0.0);
        }
        tables.push_back(std::move(t));
    }

    std::vector<int> local_n(static_cast<std::size_t>(d));
    std::size_t total = 1;
    for (int k = 0; k < d; ++k) {
        local_n[static_cast<std::size_t>(k)] = s.basis(k).degree() + 1;
        total *= static_cast<std::size_t>(local_n[static_cast<std::size_t>(k)]);
    }

    LocalBasis out;
    out.index.resize(total);
    out.value.resize(total);
    out.grad.assign(total, Vec::Zero(d));
    out.hess.assign(total, Mat::Zero(d, d));

    // polynomial tensor products N and their derivatives, pre-weighting
    std::vector<int> li(static_cast<std::size_t>(d), 0);
    std::vector<int> gi(static_cast<std::size_t>(d), 0);
    for (std::size_t a = 0; a < total; ++a) {
        std::size_t rem = a;
        for (int k = d; k-- > 0;) {
            const auto K = static_cast<std::size_t>(k);
            li[K] = static_cast<int>(rem % static_cast<std::size_t>(local_n[K]));
            rem /= static_cast<std::size_t>(local_n[K]);
            gi[K] = tables[K].first + li[K];
        }
        out.index[a] = s.flat_index(gi);

        auto factor = [&](int k, int deriv) {
            const auto K = static_cast<std::size_t>(k);
            return tables[K].values[static_cast<std::size_t>(deriv)][static_cast<std::size_t>(li[K])];
        };
        double v = 1.0;
        for (int k = 0; k < d; ++k) {
            v *= factor(k, 0);
        }
        out.value[a] = v;
        if (order >= 1) {
            for (int i = 0; i < d; ++i) {
                double g = 1.0;
                for (int k = 0; k < d; ++k) {
                    g *= factor(k, k == i ? 1 : 0);
                }
                out.grad[a](i) = g;
            }
        }
        if (order >= 2) {
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    double h = 1.0;
                    for (int k = 0; k < d; ++k) {
                        const int deriv = (k == i ? 1 : 0) + (k == j ? 1 : 0);
                        h *= factor(k, deriv);
                    }
                    out.hess[a](i, j) = h;
                }
            }
        }
    }

    if (!s.is_rational()) {
        return out;
    }

    // quotient rule: R = wN/W
    double W = 0.0;
    Vec dW = Vec::Zero(d);
    Mat d2W = Mat::Zero(d, d);
    for (std::size_t a = 0; a < total; ++a) {
        const double w = s.weights()[out.index[a]];
        W += w * out.value[a];
        if (order >= 1) dW += w * out.grad[a];
        if (order >= 2) d2W += w * out.hess[a];
    }
    for (std::size_t a = 0; a < total; ++a) {
        const double w = s.weights()[out.index[a]];
        const double R = w * out.value[a] / W;
        Vec dR = Vec::Zero(d);
        if (order >= 1) {
            dR = (w * out.grad[a] - R * dW) / W;
        }
        if (order >= 2) {
            Mat h = w * out.hess[a] - dR * dW.transpose() - dW * dR.transpose() - R * d2W;
            out.hess[a] = h / W;
        }
        out.value[a] = R;
        out.grad[a] = dR;
    }
    return out;
}

/// Value and parametric derivatives of every component at one parameter.
/// `jacobian(c, k)` = d value_c / d theta_k; `hessian[c](k, l)` the second derivatives.
struct SplinePoint {
    Vec value;
    Mat jacobian;
    std::vector<Mat> hessian;
};

inline SplinePoint combine(const TensorSpline& s, const LocalBasis& basis, int order) {
    const int d = s.dim();
    const int c = s.components();
    SplinePoint p;
    p.value = Vec::Zero(c);
    p.jacobian = Mat::Zero(c, d);
    p.hessian.assign(static_cast<std::size_t>(c), Mat::Zero(d, d));
    for (std::size_t a = 0; a < basis.size(); ++a) {
        for (int comp = 0; comp < c; ++comp) {
            const double coef = s.coefficient(basis.index[a], comp);
            p.value(comp) += coef * basis.value[a];
            if (order >= 1) p.jacobian.row(comp) += coef * basis.grad[a].transpose();
            if (order >= 2) p.hessian[static_cast<std::size_t>(comp)] += coef * basis.hess[a];
        }
    }
    return p;
}

/// Evaluates the spline and its partial derivatives up to `max_deriv` (0, 1 or 2).
inline SplinePoint evaluate(const TensorSpline& s, const Vec& theta, int max_deriv) {
    if (max_deriv > 2) {
        throw UnsupportedDerivativeError("evaluate supports derivatives up to order 2");
    }
    return combine(s, local_basis(s, theta, max_deriv), max_deriv);
}

/// Boehm knot insertion along `axis`; the represented object is unchanged.
/// Weighted coefficients and weights are combined with the same convex weights.
inline TensorSpline insert_knot(const TensorSpline& s, int axis, double u) {
    const auto& kv = s.basis(axis);
    KnotVector refined = with_knot(kv, u); // validates range and multiplicity
    const int p = kv.degree();
    const int k = kv.find_span(u);
    const int mult = kv.multiplicity(u);
    const int n = kv.basis_count();
    const auto& U = kv.knots();

    std::size_t outer = 1, inner = 1;
    for (int a = 0; a < s.dim(); ++a) {
        if (a < axis) outer *= static_cast<std::size_t>(s.basis(a).basis_count());
        if (a > axis) inner *= static_cast<std::size_t>(s.basis(a).basis_count());
    }
    const auto c = static_cast<std::size_t>(s.components());
    const std::size_t hw = c + 1; // homogeneous width

    std::vector<double> alpha(static_cast<std::size_t>(n + 1), 0.0);
    for (int i = 0; i <= n; ++i) {
        if (i <= k - p) {
            alpha[static_cast<std::size_t>(i)] = 1.0;
        } else if (i <= k - mult) {
            const auto I = static_cast<std::size_t>(i);
            alpha[I] = (u - U[I]) / (U[I + static_cast<std::size_t>(p)] - U[I]);
        } else {
            alpha[static_cast<std::size_t>(i)] = 0.0;
        }
    }

    const std::size_t n_old = static_cast<std::size_t>(n);
    const std::size_t n_new = n_old + 1;
    std::vector<double> coef(outer * n_new * inner * c);
    std::vector<double> weights(outer * n_new * inner);
    std::vector<double> Pi(hw), Pm(hw);

    auto load = [&](std::size_t o, std::size_t i, std::size_t in, std::vector<double>& P) {
        const std::size_t flat = (o * n_old + i) * inner + in;
        const double w = s.weights()[flat];
        for (std::size_t comp = 0; comp < c; ++comp) {
            P[comp] = w * s.coefficients()[flat * c + comp];
        }
        P[c] = w;
    };

    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t in = 0; in < inner; ++in) {
            for (std::size_t i = 0; i < n_new; ++i) {
                const double a = alpha[i];
                std::vector<double> Q(hw, 0.0);
                if (a == 1.0) {
                    load(o, i, in, Pi);
                    Q = Pi;
                } else if (a == 0.0) {
                    load(o, i - 1, in, Pm);
                    Q = Pm;
                } else {
                    load(o, i, in, Pi);
                    load(o, i - 1, in, Pm);
                    for (std::size_t h = 0; h < hw; ++h) {
                        Q[h] = a * Pi[h] + (1.0 - a) * Pm[h];
                    }
                }
                const std::size_t flat = (o * n_new + i) * inner + in;
                weights[flat] = Q[c];
                for (std::size_t comp = 0; comp < c; ++comp) {
                    coef[flat * c + comp] = Q[comp] / Q[c];
                }
            }
        }
    }

    auto bases = s.bases();
    bases[static_cast<std::size_t>(axis)] = std::move(refined);
    return TensorSpline(std::move(bases), s.components(), std::move(coef), std::move(weights));
}

/// Inserts every knot in `knots` along `axis`.
inline TensorSpline refine(TensorSpline s, int axis, const std::vector<double>& knots) {
    for (double u : knots) {
        s = insert_knot(s, axis, u);
    }
    return s;
}

/// Refines every direction to the given target knot vectors.
inline TensorSpline refine_to(TensorSpline s, const std::vector<KnotVector>& targets) {
    if (static_cast<int>(targets.size()) != s.dim()) {
        throw PreconditionError("target knot vectors do not match spline dimension");
    }
    for (int a = 0; a < s.dim(); ++a) {
        s = refine(std::move(s), a, knot_difference(s.basis(a), targets[static_cast<std::size_t>(a)]));
    }
    return s;
}

} // namespace igal::nurbs
