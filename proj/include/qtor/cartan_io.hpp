#pragma once

#include "qtor/lattice.hpp"

#include <fstream>
#include <json.hpp>

namespace qtor {

/// Load an explicit Cartan matrix from a JSON file: {"matrix": [[...], ...]}.
inline CartanData cartan_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open Cartan file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error("Cartan file '" + path + "': " + e.what());
    }
    if (!j.contains("matrix") || !j["matrix"].is_array())
        throw validation_error("Cartan file '" + path + "': missing \"matrix\" array");
    std::vector<std::vector<int>> m;
    for (const auto& row : j["matrix"]) {
        if (!row.is_array())
            throw validation_error("Cartan file '" + path + "': matrix rows must be arrays");
        std::vector<int> r;
        for (const auto& x : row) {
            if (!x.is_number_integer())
                throw validation_error("Cartan file '" + path + "': entries must be integers");
            r.push_back(x.get<int>());
        }
        m.push_back(std::move(r));
    }
    return cartan_from_matrix(std::move(m));
}

} // namespace qtor
