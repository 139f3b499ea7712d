#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "igal/igal.hpp"

namespace {

using namespace igal;

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kAssembly = 3, kSolver = 4, kMetric = 5 };

int exit_code(const Error& e) {
    switch (e.category()) {
    case Error::Category::Input: return kConfig;
    case Error::Category::Assembly: return kAssembly;
    case Error::Category::Solver: return kSolver;
    case Error::Category::Metric: return kMetric;
    }
    return kOther;
}

/// Flags mirroring ExperimentConfig. Values given on the command line override the
/// configuration file.
struct ConfigFlags {
    std::string config_path;
    std::string name, example, method, scheme, boundary, output;
    std::vector<std::string> methods;
    std::vector<int> n, m, n_sequence, m_sequence;
    int quad_order = 0;
    double boundary_weight = 1.0;
    std::uint64_t seed = 0;
    bool no_timing = false;
    std::vector<CLI::Option*> options;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
        auto add = [&](CLI::Option* o) { options.push_back(o); };
        add(app->add_option("--name", name, "experiment name, default output prefix"));
        add(app->add_option("--example", example, "example id I..V"));
        add(app->add_option("--method", method, "igac | igal | igal_fixed | igal_variable"));
        add(app->add_option("--methods", methods, "methods of a convergence study")->delimiter(','));
        add(app->add_option("--scheme", scheme, "greville | uniform | refined_greville"));
        add(app->add_option("-n,--n", n, "control points per direction")->delimiter(','));
        add(app->add_option("-m,--m", m, "collocation points per direction")->delimiter(','));
        add(app->add_option("--n-sequence", n_sequence, "control point counts of a study")->delimiter(','));
        add(app->add_option("--m-sequence", m_sequence, "collocation point counts of an igal_fixed study")
                ->delimiter(','));
        add(app->add_option("--quad-order", quad_order, "Gauss points per cell direction, 0 = degree + 2"));
        add(app->add_option("--boundary", boundary, "auto | constrained | weighted"));
        add(app->add_option("--boundary-weight", boundary_weight, "scale of soft boundary rows"));
        add(app->add_option("--output", output, "output path prefix"));
        add(app->add_option("--seed", seed, "seed of randomized diagnostics"));
        add(app->add_flag("--no-timing", no_timing, "write zero timings"));
    }

    bool given(const std::string& flag) const {
        for (const auto* o : options) {
            if (o->check_lname(flag.substr(2)) && o->count() > 0) return true;
        }
        return false;
    }

    bench::ExperimentConfig resolve() const {
        bench::ExperimentConfig c = config_path.empty() ? bench::ExperimentConfig{} : bench::load_config(config_path);
        if (given("--name")) c.name = name;
        if (given("--example")) c.example = example;
        if (given("--method")) c.method = bench::method_from_string(method);
        if (given("--methods")) {
            c.methods.clear();
            for (const auto& s : methods) c.methods.push_back(bench::method_from_string(s));
        }
        if (given("--scheme")) c.scheme = collocation::scheme_from_string(scheme);
        if (given("--n")) c.n = n;
        if (given("--m")) c.m = m;
        if (given("--n-sequence")) c.n_sequence = n_sequence;
        if (given("--m-sequence")) c.m_sequence = m_sequence;
        if (given("--quad-order")) c.quad_order = quad_order;
        if (given("--boundary")) c.boundary = bench::imposition_from_string(boundary);
        if (given("--boundary-weight")) c.boundary_weight = boundary_weight;
        if (given("--output")) c.output = output;
        if (given("--seed")) c.seed = seed;
        if (no_timing) c.record_timing = false;
        c.validate();
        return c;
    }
};

std::string output_prefix(const bench::ExperimentConfig& c) { return c.output.empty() ? c.name : c.output; }

void write_outputs(const bench::ExperimentConfig& c, const std::vector<bench::RunResult>& runs,
                   const nlohmann::json& report) {
    std::ostringstream csv;
    bench::write_csv(csv, runs);
    std::cout << csv.str();
    const auto prefix = output_prefix(c);
    std::ofstream(prefix + ".csv") << csv.str();
    nlohmann::json j;
    j["config"] = bench::to_json(c);
    j["report"] = report;
    std::ofstream(prefix + ".json") << j.dump(2) << "\n";
}

nlohmann::json runs_json(const std::vector<bench::RunResult>& runs) {
    auto j = nlohmann::json::array();
    for (const auto& r : runs) j.push_back(bench::to_json(r));
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isogeometric collocation benchmark: IGA-C and least-squares IGA-L"};
    app.require_subcommand(1);

    ConfigFlags solve_flags, converge_flags, stability_flags;
    auto* solve = app.add_subcommand("solve", "single solve");
    solve_flags.attach(solve);
    auto* converge = app.add_subcommand("converge", "convergence study over n or m sequences");
    converge_flags.attach(converge);
    auto* stability = app.add_subcommand("stability", "IGA-C vs IGA-L on uniform and Greville points (example V)");
    stability_flags.attach(stability);

    int dim = 1, degree = 3;
    long long cost_n = 10, cost_m = 16;
    std::string problem = "scalar", cost_output;
    bool bracketed = false;
    auto* cost = app.add_subcommand("cost-model", "flop counts of point formation and solve");
    cost->add_option("--dim", dim, "parametric dimension")->check(CLI::Range(1, 3));
    cost->add_option("--degree", degree, "spline degree");
    cost->add_option("-n,--n", cost_n, "control points per direction");
    cost->add_option("-m,--m", cost_m, "collocation points per direction");
    cost->add_option("--problem", problem, "scalar | vector")->check(CLI::IsMember({"scalar", "vector"}));
    cost->add_flag("--bracketed", bracketed, "use the bracketed table variants");
    cost->add_option("--output", cost_output, "write <output>.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*solve) {
            const auto c = solve_flags.resolve();
            const auto r = bench::run_solve(c);
            write_outputs(c, {r}, bench::to_json(r));
        } else if (*converge) {
            const auto c = converge_flags.resolve();
            const auto runs = bench::run_convergence(c);
            write_outputs(c, runs, runs_json(runs));
        } else if (*stability) {
            auto c = stability_flags.resolve();
            if (!stability_flags.given("--example") && stability_flags.config_path.empty()) c.example = "V";
            const auto rep = bench::run_stability(c);
            write_outputs(c, rep.runs, bench::to_json(rep));
            std::cout << "igac_unstable=" << rep.igac_unstable << " igal_stable=" << rep.igal_stable << "\n";
        } else if (*cost) {
            const auto kind = problem == "vector" ? linalg::ProblemKind::Vector : linalg::ProblemKind::Scalar;
            const auto fc = linalg::flop_cost_model(dim, degree, cost_n, cost_m, kind, bracketed);
            const auto j = bench::to_json(fc);
            std::cout << j.dump(2) << "\n";
            if (!cost_output.empty()) std::ofstream(cost_output + ".json") << j.dump(2) << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOther;
    }
    return kOk;
}
