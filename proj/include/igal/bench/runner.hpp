#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "igal/bench/config.hpp"
#include "igal/bvp/examples.hpp"
#include "igal/collocation/assemble.hpp"
#include "igal/collocation/field.hpp"
#include "igal/collocation/points.hpp"
#include "igal/error.hpp"
#include "igal/linalg/solver.hpp"
#include "igal/metrics/errors.hpp"

namespace igal::bench {

/// Relative solution error above which a run is labelled unstable.
inline constexpr double kUnstableThreshold = 10.0;

struct RunResult {
    std::string example;
    Method method = Method::Igac;
    SchemeKind scheme = SchemeKind::Greville;
    std::vector<int> n;
    std::vector<int> m;
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    std::optional<linalg::SolveReport> solve;
    std::optional<metrics::ErrorReport> errors;
    double seconds = 0.0;
    std::string status; ///< "ok", "unstable" or "failed: <reason>"

    bool ok() const { return solve.has_value(); }
    double max_e_T() const {
        return errors ? *std::max_element(errors->e_T.begin(), errors->e_T.end()) : 0.0;
    }
};

/// Default counts per direction: (n, m) of the reference runs.
inline std::pair<int, int> default_counts(const std::string& example_id) {
    if (example_id == "I" || example_id == "V") return {10, 16};
    if (example_id == "II") return {15, 20};
    if (example_id == "III") return {7, 10};
    if (example_id == "IV") return {11, 18};
    return {10, 16};
}

inline std::vector<int> per_direction(std::vector<int> v, int dim, const char* what) {
    if (v.size() == 1) v.assign(static_cast<std::size_t>(dim), v.front());
    if (static_cast<int>(v.size()) != dim) {
        throw ConfigError(std::string(what) + " needs 1 or " + std::to_string(dim) + " entries");
    }
    return v;
}

inline bvp::BvpDefinition problem_for(const ExperimentConfig& c) {
    return bvp::example_by_id(c.example, c.material.value_or(bvp::MaterialParams{}));
}

/// Collocation counts implied by the method: igac uses m = n, igal_variable m = n + 2.
inline std::vector<int> collocation_counts(Method method, const std::vector<int>& n, const std::vector<int>& m) {
    switch (method) {
    case Method::Igac: return n;
    case Method::IgalVariable: {
        auto out = n;
        for (auto& v : out) v += 2;
        return out;
    }
    default: return m;
    }
}

/// Imposition actually used for a problem once auto is resolved.
inline BoundaryImposition resolve_imposition(const bvp::BvpDefinition& problem, BoundaryImposition b) {
    if (b != BoundaryImposition::Auto) return b;
    const bool all_dirichlet = std::all_of(problem.boundary.begin(), problem.boundary.end(),
                                           [](const auto& bc) { return bc.kind == bvp::BcKind::Dirichlet; });
    return all_dirichlet ? BoundaryImposition::Constrained : BoundaryImposition::Weighted;
}

/// Rows fitted before the others: point supports, plus Dirichlet rows when constrained.
inline std::vector<Eigen::Index> constraint_rows(const collocation::CollocationSystem& sys,
                                                 BoundaryImposition resolved) {
    std::vector<Eigen::Index> rows;
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        const auto& r = sys.rows[i];
        const bool hard = r.kind == collocation::RowKind::Support ||
                          (resolved == BoundaryImposition::Constrained && r.essential);
        if (hard) rows.push_back(static_cast<Eigen::Index>(i));
    }
    return rows;
}

/// Square IGA-C systems go through Gaussian elimination; everything else is a least-squares
/// solve, through the normal equations when nothing is constrained.
inline linalg::SolveReport solve_system(const collocation::CollocationSystem& sys, Method method,
                                        BoundaryImposition resolved) {
    if (method == Method::Igac && sys.A.rows() == sys.A.cols()) return linalg::solve_square(sys.A, sys.b);
    const auto hard = constraint_rows(sys, resolved);
    if (hard.empty()) return linalg::solve_normal_equations(sys.A, sys.b);
    return linalg::solve_constrained_least_squares(sys.A, sys.b, hard);
}

/// build field -> collocation points -> assemble -> solve -> errors for one (n, m).
inline RunResult run_case(const bvp::BvpDefinition& problem, const ExperimentConfig& c, Method method,
                          const std::vector<int>& n, const std::vector<int>& m) {
    RunResult r;
    r.example = problem.id;
    r.method = method;
    r.scheme = c.scheme;
    r.n = n;
    r.m = collocation_counts(method, n, m);
    const auto start = std::chrono::steady_clock::now();

    auto field = collocation::build_field(problem, r.n);
    const auto points = collocation::generate_collocation_points(field.bases(), {c.scheme, r.m});
    const auto sys = collocation::assemble(problem, field, points, {c.boundary_weight});
    r.rows = sys.row_count();
    r.cols = sys.col_count();
    r.solve = solve_system(sys, method, resolve_imposition(problem, c.boundary));
    const auto& x = r.solve->x;
    field = field.with_coefficients(std::vector<double>(x.data(), x.data() + x.size()));
    if (problem.has_analytic()) r.errors = metrics::error_report(problem, field, c.quad_order);

    if (c.record_timing) {
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    r.status = r.max_e_T() > kUnstableThreshold ? "unstable" : "ok";
    return r;
}

/// Single solve with the configuration's method, n and m.
inline RunResult run_solve(const ExperimentConfig& c) {
    c.validate();
    const auto problem = problem_for(c);
    const int dim = problem.dim();
    const auto [dn, dm] = default_counts(problem.id);
    const auto n = per_direction(c.n.empty() ? std::vector<int>{dn} : c.n, dim, "n");
    const auto m = per_direction(c.m.empty() ? std::vector<int>{dm} : c.m, dim, "m");
    return run_case(problem, c, c.method, n, m);
}

/// Convergence study. igac and igal_variable sweep n_sequence; igal_fixed keeps n and
/// sweeps m_sequence; igal sweeps n_sequence with the configured m. A failing cell is
/// recorded with its reason and the study continues. Rows come in config order.
inline std::vector<RunResult> run_convergence(const ExperimentConfig& c) {
    c.validate();
    const auto problem = problem_for(c);
    const int dim = problem.dim();
    const auto [dn, dm] = default_counts(problem.id);
    const auto methods = c.methods.empty() ? std::vector<Method>{c.method} : c.methods;
    std::vector<RunResult> out;

    auto attempt = [&](Method method, const std::vector<int>& n, const std::vector<int>& m) {
        try {
            out.push_back(run_case(problem, c, method, n, m));
        } catch (const Error& e) {
            RunResult r;
            r.example = problem.id;
            r.method = method;
            r.scheme = c.scheme;
            r.n = n;
            r.m = collocation_counts(method, n, m);
            r.status = std::string("failed: ") + e.what();
            out.push_back(std::move(r));
        }
    };

    for (const Method method : methods) {
        if (method == Method::IgalFixed) {
            if (c.m_sequence.empty()) throw ConfigError("igal_fixed needs m_sequence");
            const auto n = per_direction(c.n.empty() ? std::vector<int>{dn} : c.n, dim, "n");
            for (int mv : c.m_sequence) attempt(method, n, std::vector<int>(static_cast<std::size_t>(dim), mv));
            continue;
        }
        if (c.n_sequence.empty()) throw ConfigError(std::string(to_string(method)) + " needs n_sequence");
        const auto m = per_direction(c.m.empty() ? std::vector<int>{dm} : c.m, dim, "m");
        for (int nv : c.n_sequence) attempt(method, std::vector<int>(static_cast<std::size_t>(dim), nv), m);
    }
    return out;
}

struct StabilityReport {
    std::vector<RunResult> runs; ///< igac uniform, igac greville, igal uniform, igal greville
    bool igac_unstable = false;
    bool igal_stable = false;
};

/// IGA-C and IGA-L on uniform and Greville points for the fixed non-uniform field.
inline StabilityReport run_stability(const ExperimentConfig& c) {
    c.validate();
    const auto problem = problem_for(c);
    if (problem.id != "V") throw ConfigError("the stability experiment runs on example V");
    const auto [dn, dm] = default_counts(problem.id);
    const auto n = per_direction(c.n.empty() ? std::vector<int>{dn} : c.n, 1, "n");
    const auto m = per_direction(c.m.empty() ? std::vector<int>{dm} : c.m, 1, "m");

    StabilityReport rep;
    rep.igac_unstable = true;
    rep.igal_stable = true;
    for (const Method method : {Method::Igac, Method::Igal}) {
        for (const SchemeKind kind : {SchemeKind::Uniform, SchemeKind::Greville}) {
            auto cfg = c;
            cfg.scheme = kind;
            auto r = run_case(problem, cfg, method, n, m);
            if (method == Method::Igac) {
                rep.igac_unstable = rep.igac_unstable && r.max_e_T() > kUnstableThreshold;
            } else {
                rep.igal_stable = rep.igal_stable && r.max_e_T() < 0.1;
            }
            rep.runs.push_back(std::move(r));
        }
    }
    return rep;
}

} // namespace igal::bench
