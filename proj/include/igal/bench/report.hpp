#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "igal/bench/runner.hpp"
#include "igal/linalg/cost_model.hpp"

namespace igal::bench {

inline const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = {"example", "method",  "n_per_dir", "m_per_dir", "e_T",     "e_DT",
                                                  "max_abs", "flops",   "seconds",   "quantity",  "status"};
    return cols;
}

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline std::string format_counts(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "x" : "") + std::to_string(v[i]);
    return s;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

/// One row per reported quantity; a failed run gives a single row with empty numbers.
inline std::vector<std::vector<std::string>> csv_rows(const RunResult& r) {
    std::vector<std::vector<std::string>> rows;
    const std::string flops = r.solve ? format_number(r.solve->flop_estimate) : "";
    const std::string seconds = format_number(r.seconds);
    const std::string method = std::string(to_string(r.method)) + "/" + collocation::to_string(r.scheme);
    if (!r.errors) {
        rows.push_back({r.example, method, format_counts(r.n), format_counts(r.m), "", "", "", flops, seconds, "",
                        csv_escape(r.status)});
        return rows;
    }
    const auto& e = *r.errors;
    const std::string e_dt = e.e_DT ? format_number(*e.e_DT) : "";
    for (std::size_t q = 0; q < e.quantities.size(); ++q) {
        rows.push_back({r.example, method, format_counts(r.n), format_counts(r.m), format_number(e.e_T[q]), e_dt,
                        format_number(e.max_abs[q]), flops, seconds, e.quantities[q], csv_escape(r.status)});
    }
    return rows;
}

inline void write_csv(std::ostream& out, const std::vector<RunResult>& runs) {
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& r : runs) {
        for (const auto& row : csv_rows(r)) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
            out << "\n";
        }
    }
}

inline nlohmann::json to_json(const metrics::ErrorReport& e) {
    nlohmann::json j;
    j["quantities"] = e.quantities;
    j["e_T"] = e.e_T;
    j["e_DT"] = e.e_DT ? nlohmann::json(*e.e_DT) : nlohmann::json(nullptr);
    j["max_abs"] = e.max_abs;
    j["quadrature_order"] = e.quadrature_order;
    if (!e.samples.empty()) {
        auto& s = j["abs_field_samples"] = nlohmann::json::array();
        for (const auto& p : e.samples) {
            s.push_back({{"theta", std::vector<double>(p.theta.data(), p.theta.data() + p.theta.size())},
                         {"x", std::vector<double>(p.x.data(), p.x.data() + p.x.size())},
                         {"e_a", std::vector<double>(p.error.data(), p.error.data() + p.error.size())}});
        }
    }
    return j;
}

inline nlohmann::json to_json(const linalg::SolveReport& s) {
    nlohmann::json j;
    j["method"] = linalg::to_string(s.method);
    j["residual_norm"] = s.residual_norm;
    j["flop_estimate"] = s.flop_estimate;
    j["condition_estimate"] = s.condition_estimate ? nlohmann::json(*s.condition_estimate) : nlohmann::json(nullptr);
    return j;
}

inline nlohmann::json to_json(const RunResult& r) {
    nlohmann::json j;
    j["example"] = r.example;
    j["method"] = to_string(r.method);
    j["scheme"] = collocation::to_string(r.scheme);
    j["n_per_dir"] = r.n;
    j["m_per_dir"] = r.m;
    j["rows"] = r.rows;
    j["cols"] = r.cols;
    j["seconds"] = r.seconds;
    j["status"] = r.status;
    j["solve"] = r.solve ? to_json(*r.solve) : nlohmann::json(nullptr);
    j["errors"] = r.errors ? to_json(*r.errors) : nlohmann::json(nullptr);
    return j;
}

inline nlohmann::json to_json(const StabilityReport& s) {
    nlohmann::json j;
    auto& runs = j["runs"] = nlohmann::json::array();
    for (const auto& r : s.runs) runs.push_back(to_json(r));
    j["igac_unstable"] = s.igac_unstable;
    j["igal_stable"] = s.igal_stable;
    return j;
}

inline nlohmann::json to_json(const linalg::FlopCost& c) {
    nlohmann::json j;
    j["dimension"] = c.dim;
    j["degree"] = c.degree;
    j["n"] = c.n;
    j["m"] = c.m;
    j["problem"] = linalg::to_string(c.kind);
    j["bracketed"] = c.bracketed;
    j["first_derivatives"] = c.first_derivatives;
    j["second_derivatives"] = c.second_derivatives;
    j["basis_total"] = c.basis_total;
    j["navier_global"] = c.navier_global ? nlohmann::json(*c.navier_global) : nlohmann::json(nullptr);
    j["per_point_total"] = c.per_point_total;
    j["igac_solve"] = c.igac_solve;
    j["igal_solve"] = c.igal_solve;
    return j;
}

} // namespace igal::bench
