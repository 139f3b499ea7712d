#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "igal/bvp/definition.hpp"
#include "igal/collocation/points.hpp"
#include "igal/error.hpp"

namespace igal::bench {

using collocation::SchemeKind;

/// igac: m = n. igal: explicit m. igal_fixed: fixed n, sweep m. igal_variable: m = n + 2.
enum class Method { Igac, Igal, IgalFixed, IgalVariable };

inline const char* to_string(Method m) {
    switch (m) {
    case Method::Igac: return "igac";
    case Method::Igal: return "igal";
    case Method::IgalFixed: return "igal_fixed";
    case Method::IgalVariable: return "igal_variable";
    }
    return "?";
}

inline Method method_from_string(const std::string& s) {
    if (s == "igac") return Method::Igac;
    if (s == "igal") return Method::Igal;
    if (s == "igal_fixed") return Method::IgalFixed;
    if (s == "igal_variable") return Method::IgalVariable;
    throw ConfigError("unknown method '" + s + "'");
}

inline bool is_least_squares(Method m) { return m != Method::Igac; }

/// Point supports are always fitted first. constrained: Dirichlet rows are fitted first too
/// and the remaining rows are solved in their null space. weighted: boundary rows enter the
/// least-squares problem scaled by boundary_weight. auto: constrained when every face is
/// Dirichlet, weighted otherwise.
enum class BoundaryImposition { Auto, Constrained, Weighted };

inline const char* to_string(BoundaryImposition b) {
    switch (b) {
    case BoundaryImposition::Auto: return "auto";
    case BoundaryImposition::Constrained: return "constrained";
    case BoundaryImposition::Weighted: return "weighted";
    }
    return "?";
}

inline BoundaryImposition imposition_from_string(const std::string& s) {
    if (s == "auto") return BoundaryImposition::Auto;
    if (s == "constrained") return BoundaryImposition::Constrained;
    if (s == "weighted") return BoundaryImposition::Weighted;
    throw ConfigError("unknown boundary imposition '" + s + "'");
}

struct ExperimentConfig {
    std::string name = "igal";
    std::string example = "I";
    Method method = Method::Igac;
    std::vector<Method> methods;      ///< convergence studies; empty = {method}
    SchemeKind scheme = SchemeKind::Greville;
    std::vector<int> n;               ///< control points per direction (one value = all directions)
    std::vector<int> m;               ///< collocation points per direction
    std::vector<int> n_sequence;      ///< per-direction counts of a convergence study
    std::vector<int> m_sequence;      ///< per-direction point counts of an igal_fixed study
    int quad_order = 0;               ///< 0 = field degree + 2
    BoundaryImposition boundary = BoundaryImposition::Auto;
    double boundary_weight = 1.0;
    std::string output;               ///< path prefix for <output>.csv / <output>.json; empty = none
    std::uint64_t seed = 0;
    bool record_timing = true;
    std::optional<bvp::MaterialParams> material;

    bool operator==(const ExperimentConfig&) const = default;

    /// Checks the method/count rules that do not depend on the example.
    void validate() const {
        if (quad_order < 0) throw ConfigError("quad_order must be >= 0");
        if (!(boundary_weight > 0.0)) throw ConfigError("boundary_weight must be positive");
        for (int v : n) {
            if (v < 1) throw ConfigError("n entries must be positive");
        }
        for (int v : m) {
            if (v < 2) throw ConfigError("m entries must be at least 2");
        }
        for (std::size_t i = 1; i < m_sequence.size(); ++i) {
            if (m_sequence[i] <= m_sequence[i - 1]) throw ConfigError("m_sequence must be increasing");
        }
        for (std::size_t i = 1; i < n_sequence.size(); ++i) {
            if (n_sequence[i] <= n_sequence[i - 1]) throw ConfigError("n_sequence must be increasing");
        }
        if (material) {
            try {
                material->validate();
            } catch (const Error& e) {
                throw ConfigError(e.what());
            }
        }
    }
};

inline bvp::MaterialParams material_from_json(const nlohmann::json& j) {
    bvp::MaterialParams m;
    m.youngs_modulus = j.value("youngs_modulus", m.youngs_modulus);
    m.poisson_ratio = j.value("poisson_ratio", m.poisson_ratio);
    m.load = j.value("load", m.load);
    m.depth = j.value("depth", m.depth);
    m.half_length = j.value("half_length", m.half_length);
    return m;
}

inline nlohmann::json to_json(const bvp::MaterialParams& m) {
    return {{"youngs_modulus", m.youngs_modulus},
            {"poisson_ratio", m.poisson_ratio},
            {"load", m.load},
            {"depth", m.depth},
            {"half_length", m.half_length}};
}

inline nlohmann::json to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["name"] = c.name;
    j["example"] = c.example;
    j["method"] = to_string(c.method);
    std::vector<std::string> methods;
    for (auto m : c.methods) methods.emplace_back(to_string(m));
    j["methods"] = methods;
    j["scheme"] = collocation::to_string(c.scheme);
    j["n"] = c.n;
    j["m"] = c.m;
    j["n_sequence"] = c.n_sequence;
    j["m_sequence"] = c.m_sequence;
    j["quad_order"] = c.quad_order;
    j["boundary"] = to_string(c.boundary);
    j["boundary_weight"] = c.boundary_weight;
    j["output"] = c.output;
    j["seed"] = c.seed;
    j["record_timing"] = c.record_timing;
    if (c.material) j["material"] = to_json(*c.material);
    return j;
}

namespace detail {

inline std::vector<int> int_list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return {};
    const auto& v = j.at(key);
    if (v.is_number_integer()) return {v.get<int>()};
    return v.get<std::vector<int>>();
}

} // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    static const std::vector<std::string> known = {"name", "example", "method", "methods", "scheme", "n", "m",
                                                   "n_sequence", "m_sequence", "quad_order", "boundary", "boundary_weight",
                                                   "output", "seed", "record_timing", "material"};
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("unknown configuration key '" + key + "'");
        }
    }
    ExperimentConfig c;
    try {
        c.name = j.value("name", c.name);
        if (j.contains("example")) {
            const auto& e = j.at("example");
            c.example = e.is_number_integer() ? std::to_string(e.get<int>()) : e.get<std::string>();
        }
        if (j.contains("method")) c.method = method_from_string(j.at("method").get<std::string>());
        if (j.contains("methods")) {
            for (const auto& m : j.at("methods")) c.methods.push_back(method_from_string(m.get<std::string>()));
        }
        if (j.contains("scheme")) c.scheme = collocation::scheme_from_string(j.at("scheme").get<std::string>());
        c.n = detail::int_list(j, "n");
        c.m = detail::int_list(j, "m");
        c.n_sequence = detail::int_list(j, "n_sequence");
        c.m_sequence = detail::int_list(j, "m_sequence");
        c.quad_order = j.value("quad_order", c.quad_order);
        if (j.contains("boundary")) c.boundary = imposition_from_string(j.at("boundary").get<std::string>());
        c.boundary_weight = j.value("boundary_weight", c.boundary_weight);
        c.output = j.value("output", c.output);
        c.seed = j.value("seed", c.seed);
        c.record_timing = j.value("record_timing", c.record_timing);
        if (j.contains("material")) c.material = material_from_json(j.at("material"));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed configuration: ") + e.what());
    }
    c.validate();
    return c;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("cannot parse '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

} // namespace igal::bench
