#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "igal/error.hpp"

namespace igal::nurbs {

/// Clamped (open) knot vector of a given degree.
///
/// Invariants, checked on construction:
///  - knots are nondecreasing;
///  - the first and last knot each appear exactly degree+1 times;
///  - no interior knot has multiplicity greater than the degree;
///  - the number of basis functions, size - degree - 1, is at least degree + 1.
class KnotVector {
public:
    KnotVector() = default;

    KnotVector(std::vector<double> knots, int degree) : knots_(std::move(knots)), degree_(degree) {
        validate();
    }

    /// Clamped knot vector on [a, b] from its distinct interior knots.
    static KnotVector clamped(int degree, const std::vector<double>& interior, double a = 0.0,
                              double b = 1.0) {
        std::vector<double> k(static_cast<std::size_t>(degree + 1), a);
        k.insert(k.end(), interior.begin(), interior.end());
        k.insert(k.end(), static_cast<std::size_t>(degree + 1), b);
        return KnotVector(std::move(k), degree);
    }

    /// Clamped knot vector with equally spaced interior knots and `basis_count` basis functions.
    static KnotVector uniform(int degree, int basis_count, double a = 0.0, double b = 1.0) {
        if (basis_count < degree + 1) {
            throw InvalidKnotVectorError("uniform knot vector needs at least degree+1 basis functions");
        }
        const int intervals = basis_count - degree;
        std::vector<double> interior;
        for (int i = 1; i < intervals; ++i) {
            interior.push_back(a + (b - a) * static_cast<double>(i) / intervals);
        }
        return clamped(degree, interior, a, b);
    }

    int degree() const noexcept { return degree_; }
    const std::vector<double>& knots() const noexcept { return knots_; }
    std::size_t size() const noexcept { return knots_.size(); }
    double operator[](std::size_t i) const { return knots_[i]; }

    int basis_count() const noexcept { return static_cast<int>(knots_.size()) - degree_ - 1; }
    double front() const { return knots_.front(); }
    double back() const { return knots_.back(); }

    bool contains(double u) const noexcept { return u >= front() && u <= back(); }

    /// Knots strictly between the end knots, with repetition.
    std::vector<double> interior() const {
        return {knots_.begin() + degree_ + 1, knots_.end() - degree_ - 1};
    }

    /// Distinct knot values in increasing order.
    std::vector<double> breakpoints() const {
        std::vector<double> b(knots_);
        b.erase(std::unique(b.begin(), b.end()), b.end());
        return b;
    }

    int multiplicity(double u) const {
        return static_cast<int>(std::count(knots_.begin(), knots_.end(), u));
    }

    /// Span index i with knots[i] <= u < knots[i+1]; the right end knot maps to the
    /// last nonempty span so that the closed interval is covered.
    int find_span(double u) const {
        if (!contains(u) || std::isnan(u)) {
            std::ostringstream msg;
            msg << "parameter " << u << " outside knot range [" << front() << ", " << back() << "]";
            throw DomainError(msg.str());
        }
        const int n = basis_count();
        if (u >= knots_[static_cast<std::size_t>(n)]) {
            return n - 1;
        }
        auto it = std::upper_bound(knots_.begin() + degree_, knots_.begin() + n + 1, u);
        return static_cast<int>(it - knots_.begin()) - 1;
    }

    bool operator==(const KnotVector&) const = default;

private:
    void validate() const {
        if (degree_ < 0) {
            throw InvalidKnotVectorError("negative degree");
        }
        const auto p1 = static_cast<std::size_t>(degree_ + 1);
        if (knots_.size() < 2 * p1) {
            throw InvalidKnotVectorError("too few knots for the degree");
        }
        if (!std::is_sorted(knots_.begin(), knots_.end())) {
            throw InvalidKnotVectorError("knots must be nondecreasing");
        }
        if (!(knots_.front() < knots_.back())) {
            throw InvalidKnotVectorError("empty parametric range");
        }
        if (multiplicity(knots_.front()) != degree_ + 1 || multiplicity(knots_.back()) != degree_ + 1) {
            throw InvalidKnotVectorError("end knots must be repeated exactly degree+1 times");
        }
        std::size_t i = p1;
        while (i < knots_.size() - p1) {
            std::size_t j = i;
            while (j < knots_.size() && knots_[j] == knots_[i]) {
                ++j;
            }
            if (static_cast<int>(j - i) > degree_) {
                std::ostringstream msg;
                msg << "interior knot " << knots_[i] << " has multiplicity " << (j - i)
                    << " > degree " << degree_;
                throw InvalidKnotVectorError(msg.str());
            }
            i = j;
        }
    }

    std::vector<double> knots_;
    int degree_ = 0;
};

/// Nonzero B-spline basis functions and their derivatives at one parameter.
/// `values[k][j]` is the k-th derivative of basis function `first + j`.
struct BasisTable {
    int first = 0;
    std::vector<std::vector<double>> values;

    int derivative_count() const { return static_cast<int>(values.size()); }
};

/// Cox-de Boor evaluation of the degree+1 nonzero basis functions at `u` together
/// with derivatives up to order `max_deriv` (triangular table algorithm).
inline BasisTable basis_values(const KnotVector& kv, double u, int max_deriv) {
    const int p = kv.degree();
    if (max_deriv < 0 || max_deriv > p) {
        std::ostringstream msg;
        msg << "derivative order " << max_deriv << " exceeds degree " << p;
        throw UnsupportedDerivativeError(msg.str());
    }
    const int span = kv.find_span(u);
    const auto& U = kv.knots();
    const auto P = static_cast<std::size_t>(p);

    std::vector<std::vector<double>> ndu(P + 1, std::vector<double>(P + 1, 0.0));
    std::vector<double> left(P + 1, 0.0), right(P + 1, 0.0);
    ndu[0][0] = 1.0;
    for (std::size_t j = 1; j <= P; ++j) {
        left[j] = u - U[static_cast<std::size_t>(span) + 1 - j];
        right[j] = U[static_cast<std::size_t>(span) + j] - u;
        double saved = 0.0;
        for (std::size_t r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            const double temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }

    BasisTable out;
    out.first = span - p;
    out.values.assign(static_cast<std::size_t>(max_deriv) + 1, std::vector<double>(P + 1, 0.0));
    for (std::size_t j = 0; j <= P; ++j) {
        out.values[0][j] = ndu[j][P];
    }

    std::vector<std::vector<double>> a(2, std::vector<double>(P + 1, 0.0));
    for (int r = 0; r <= p; ++r) {
        std::size_t s1 = 0, s2 = 1;
        a[0][0] = 1.0;
        for (int k = 1; k <= max_deriv; ++k) {
            double d = 0.0;
            const int rk = r - k;
            const int pk = p - k;
            if (r >= k) {
                a[s2][0] = a[s1][0] / ndu[static_cast<std::size_t>(pk + 1)][static_cast<std::size_t>(rk)];
                d = a[s2][0] * ndu[static_cast<std::size_t>(rk)][static_cast<std::size_t>(pk)];
            }
            const int j1 = rk >= -1 ? 1 : -rk;
            const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                const auto J = static_cast<std::size_t>(j);
                a[s2][J] = (a[s1][J] - a[s1][J - 1]) /
                           ndu[static_cast<std::size_t>(pk + 1)][static_cast<std::size_t>(rk + j)];
                d += a[s2][J] * ndu[static_cast<std::size_t>(rk + j)][static_cast<std::size_t>(pk)];
            }
            if (r <= pk) {
                a[s2][static_cast<std::size_t>(k)] =
                    -a[s1][static_cast<std::size_t>(k - 1)] / ndu[static_cast<std::size_t>(pk + 1)][static_cast<std::size_t>(r)];
                d += a[s2][static_cast<std::size_t>(k)] * ndu[static_cast<std::size_t>(r)][static_cast<std::size_t>(pk)];
            }
            out.values[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] = d;
            std::swap(s1, s2);
        }
    }
    double factor = p;
    for (int k = 1; k <= max_deriv; ++k) {
        for (auto& v : out.values[static_cast<std::size_t>(k)]) {
            v *= factor;
        }
        factor *= (p - k);
    }
    return out;
}

/// Greville abscissae: averages of `degree` consecutive knots, one per basis function.
inline std::vector<double> greville_abscissae(const KnotVector& kv) {
    const int p = kv.degree();
    const int n = kv.basis_count();
    std::vector<double> xi(static_cast<std::size_t>(n));
    if (p == 0) {
        for (int i = 0; i < n; ++i) {
            xi[static_cast<std::size_t>(i)] = 0.5 * (kv[static_cast<std::size_t>(i)] + kv[static_cast<std::size_t>(i + 1)]);
        }
        return xi;
    }
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 1; j <= p; ++j) {
            s += kv[static_cast<std::size_t>(i + j)];
        }
        xi[static_cast<std::size_t>(i)] = s / p;
    }
    // end values are exact for clamped vectors; pin them against roundoff
    xi.front() = kv.front();
    xi.back() = kv.back();
    return xi;
}

/// Knot vector with `u` inserted once.
inline KnotVector with_knot(const KnotVector& kv, double u) {
    if (!(u > kv.front() && u < kv.back())) {
        std::ostringstream msg;
        msg << "knot " << u << " not strictly inside (" << kv.front() << ", " << kv.back() << ")";
        throw InvalidRefinementError(msg.str());
    }
    if (kv.multiplicity(u) + 1 > kv.degree()) {
        std::ostringstream msg;
        msg << "inserting " << u << " would exceed multiplicity " << kv.degree();
        throw InvalidRefinementError(msg.str());
    }
    std::vector<double> k = kv.knots();
    k.insert(std::upper_bound(k.begin(), k.end(), u), u);
    return KnotVector(std::move(k), kv.degree());
}

/// Repeatedly inserts the midpoint of the longest nonempty knot interval until the
/// knot vector carries `target_basis_count` basis functions. Ties go to the leftmost
/// interval.
inline KnotVector refine_to_count(const KnotVector& kv, int target_basis_count) {
    if (target_basis_count < kv.basis_count()) {
        throw InvalidRefinementError("target basis count below current count");
    }
    KnotVector out = kv;
    while (out.basis_count() < target_basis_count) {
        const auto& k = out.knots();
        std::size_t best = 0;
        double best_len = -1.0;
        for (std::size_t i = 0; i + 1 < k.size(); ++i) {
            const double len = k[i + 1] - k[i];
            if (len > best_len) {
                best_len = len;
                best = i;
            }
        }
        out = with_knot(out, 0.5 * (k[best] + k[best + 1]));
    }
    return out;
}

/// Inserts `count` equally spaced knots a + (b-a) i/(count+1), i = 1..count.
inline KnotVector uniform_refine(const KnotVector& kv, int count) {
    if (count < 0) {
        throw InvalidRefinementError("negative insertion count");
    }
    KnotVector out = kv;
    const double a = kv.front(), b = kv.back();
    for (int i = 1; i <= count; ++i) {
        out = with_knot(out, a + (b - a) * static_cast<double>(i) / (count + 1));
    }
    return out;
}

/// Knots of `target` that are missing from `source` (with multiplicity), for refinement.
inline std::vector<double> knot_difference(const KnotVector& source, const KnotVector& target) {
    std::vector<double> diff;
    std::set_difference(target.knots().begin(), target.knots().end(), source.knots().begin(),
                        source.knots().end(), std::back_inserter(diff));
    std::vector<double> rest;
    std::set_difference(source.knots().begin(), source.knots().end(), target.knots().begin(),
                        target.knots().end(), std::back_inserter(rest));
    if (!rest.empty() || source.degree() != target.degree()) {
        throw InvalidRefinementError("target knot vector does not refine the source");
    }
    return diff;
}

/// Tensor-product knot grid; `grid_size()` is the largest Euclidean cell diameter.
class KnotGrid {
public:
    explicit KnotGrid(std::vector<KnotVector> bases) : bases_(std::move(bases)) {}

    const std::vector<KnotVector>& bases() const noexcept { return bases_; }

    /// Nonempty intervals [lo, hi] per direction.
    std::vector<std::vector<std::pair<double, double>>> intervals() const {
        std::vector<std::vector<std::pair<double, double>>> out;
        for (const auto& kv : bases_) {
            const auto b = kv.breakpoints();
            std::vector<std::pair<double, double>> iv;
            for (std::size_t i = 0; i + 1 < b.size(); ++i) {
                iv.emplace_back(b[i], b[i + 1]);
            }
            out.push_back(std::move(iv));
        }
        return out;
    }

    double grid_size() const {
        double h2 = 0.0;
        for (const auto& iv : intervals()) {
            double m = 0.0;
            for (const auto& [lo, hi] : iv) {
                m = std::max(m, hi - lo);
            }
            h2 += m * m;
        }
        return std::sqrt(h2);
    }

private:
    std::vector<KnotVector> bases_;
};

} // namespace igal::nurbs
