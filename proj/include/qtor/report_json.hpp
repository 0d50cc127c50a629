#pragma once

#include "qtor/relations.hpp"

#include <json.hpp>

namespace qtor {

inline constexpr const char* report_schema_version = "1";

/// Coefficient-list export: {"var": "z", "bound": D, "coeffs": ["...", ...]}.
inline nlohmann::json series_to_json(const TruncSeries& s) {
    nlohmann::json j;
    j["var"] = s.var();
    j["bound"] = s.bound();
    auto coeffs = nlohmann::json::array();
    for (int k = 0; k <= s.bound(); ++k) coeffs.push_back(s.coeff(k).str());
    j["coeffs"] = coeffs;
    return j;
}

inline nlohmann::json witness_to_json(const Witness& w) {
    nlohmann::json j;
    j["modes"] = w.modes;
    j["state"] = w.state;
    if (!w.input.empty()) j["input"] = w.input;
    j["expected"] = w.expected;
    j["actual"] = w.actual;
    return j;
}

inline nlohmann::json report_to_json(const CheckReport& r) {
    nlohmann::json j;
    j["suite"] = r.suite;
    nlohmann::json p = nlohmann::json::object();
    for (const auto& [k, v] : r.params) p[k] = v;
    j["params"] = p;
    j["status"] = status_str(r.status);
    if (r.witness) j["witness"] = witness_to_json(*r.witness);
    j["ms"] = r.ms;
    return j;
}

/// {"version", "config", "reports": [...], "summary": {...}}
inline nlohmann::json full_report(const nlohmann::json& config,
                                  const std::vector<CheckReport>& reports) {
    nlohmann::json j;
    j["version"] = report_schema_version;
    j["config"] = config;
    j["reports"] = nlohmann::json::array();
    int pass = 0, fail = 0, beyond = 0;
    for (const auto& r : reports) {
        j["reports"].push_back(report_to_json(r));
        switch (r.status) {
            case CheckStatus::pass: ++pass; break;
            case CheckStatus::fail: ++fail; break;
            case CheckStatus::beyond_paper: ++beyond; break;
        }
    }
    j["summary"] = {{"pass", pass}, {"fail", fail}, {"beyond_paper", beyond}};
    return j;
}

} // namespace qtor
