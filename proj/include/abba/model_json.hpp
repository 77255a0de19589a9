#pragma once

// JSON sidecar for symbolic series. Requires nlohmann/json.

#include <cmath>
#include <optional>
#include <string>

#include <json.hpp>

#include "abba/digitization.hpp"
#include "abba/error.hpp"

namespace abba {

/// Normalization that was removed before symbolization.
struct ValueScaling {
    double mean = 0.0;
    double std = 1.0;
};

/// Everything needed to rebuild a series from its symbols:
/// {k, centers [[mean_len, mean_inc], ...], sigma_len, sigma_inc, scl,
///  tol_s, start_value, original_length, symbols}, plus cluster sizes and,
/// when given, the mean / std to undo normalization. An infinite scl is
/// written as the string "inf".
inline nlohmann::json to_json(const SymbolicSeries& s, std::optional<ValueScaling> scaling = std::nullopt) {
    nlohmann::json j;
    j["k"] = s.model.k;
    auto centers = nlohmann::json::array();
    for (const auto& c : s.model.centers) {
        centers.push_back({c[0], c[1]});
    }
    j["centers"] = std::move(centers);
    j["sizes"] = s.model.sizes;
    j["sigma_len"] = s.model.sigma_len;
    j["sigma_inc"] = s.model.sigma_inc;
    if (std::isinf(s.model.scl)) {
        j["scl"] = "inf";
    } else {
        j["scl"] = s.model.scl;
    }
    j["tol_s"] = s.model.tol_s;
    j["start_value"] = s.start_value;
    j["original_length"] = s.original_length;
    j["symbols"] = s.symbols;
    if (scaling) {
        j["mean"] = scaling->mean;
        j["std"] = scaling->std;
    }
    return j;
}

struct LoadedSymbolic {
    SymbolicSeries series;
    std::optional<ValueScaling> scaling;
};

inline LoadedSymbolic symbolic_from_json(const nlohmann::json& j) {
    try {
        LoadedSymbolic out;
        auto& m = out.series.model;
        m.k = j.at("k").get<std::size_t>();
        for (const auto& c : j.at("centers")) {
            if (c.size() != 2) {
                throw InvalidInput("each center needs two coordinates");
            }
            m.centers.push_back({c[0].get<double>(), c[1].get<double>()});
        }
        if (m.centers.size() != m.k) {
            throw InvalidInput("center count does not match k");
        }
        if (j.contains("sizes")) {
            m.sizes = j.at("sizes").get<std::vector<std::size_t>>();
        }
        m.sigma_len = j.at("sigma_len").get<double>();
        m.sigma_inc = j.at("sigma_inc").get<double>();
        const auto& scl = j.at("scl");
        if (scl.is_string()) {
            if (scl.get<std::string>() != "inf") {
                throw InvalidInput("scl must be a number or \"inf\"");
            }
            m.scl = scl_infinity;
        } else {
            m.scl = scl.get<double>();
        }
        m.tol_s = j.at("tol_s").get<double>();
        out.series.start_value = j.at("start_value").get<double>();
        out.series.original_length = j.at("original_length").get<std::size_t>();
        out.series.symbols = j.at("symbols").get<std::string>();
        if (j.contains("mean") && j.contains("std")) {
            out.scaling = ValueScaling{j.at("mean").get<double>(), j.at("std").get<double>()};
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed model: ") + e.what());
    }
}

} // namespace abba
