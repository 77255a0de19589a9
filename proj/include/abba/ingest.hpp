#pragma once

#include <charconv>
#include <filesystem>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "abba/error.hpp"
#include "abba/preprocessing.hpp"

namespace abba {

enum class InputFormat {
    csv, // one value per line, one series per file
    tsv  // UCR style: one series per line, label first, tab or comma separated
};

inline std::optional<InputFormat> parse_input_format(std::string_view name) {
    if (name == "csv") {
        return InputFormat::csv;
    }
    if (name == "tsv" || name == "ucr") {
        return InputFormat::tsv;
    }
    return std::nullopt;
}

struct LabeledSeries {
    std::string id;
    std::string label;
    Series values;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

// Parses a decimal number; NaN/inf tokens parse but are reported as such.
inline std::optional<double> parse_number(std::string_view token) {
    token = trim(token);
    if (!token.empty() && token.front() == '+') {
        token.remove_prefix(1);
    }
    if (token.empty()) {
        return std::nullopt;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        return std::nullopt;
    }
    return value;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == '\t' || line[i] == ',') {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

} // namespace detail

/// Reads one or more series from a stream. `source` prefixes the series ids.
inline std::vector<LabeledSeries> ingest(std::istream& in, InputFormat format, const std::string& source = "series") {
    std::vector<LabeledSeries> out;
    std::string line;
    std::size_t line_no = 0;
    if (format == InputFormat::csv) {
        LabeledSeries s{source, "", {}};
        while (std::getline(in, line)) {
            ++line_no;
            const auto t = detail::trim(line);
            if (t.empty()) {
                continue;
            }
            const auto v = detail::parse_number(t);
            if (!v) {
                throw IngestError("non-numeric value '" + std::string(t) + "'", line_no);
            }
            if (!std::isfinite(*v)) {
                throw IngestError("non-finite value", line_no);
            }
            s.values.push_back(*v);
        }
        if (s.values.empty()) {
            throw IngestError("no values found", 0);
        }
        out.push_back(std::move(s));
        return out;
    }

    while (std::getline(in, line)) {
        ++line_no;
        const auto t = detail::trim(line);
        if (t.empty()) {
            continue;
        }
        const auto fields = detail::split_fields(t);
        if (fields.size() < 2) {
            throw IngestError("expected a label followed by values", line_no);
        }
        LabeledSeries s{source + ":" + std::to_string(out.size()), std::string(fields[0]), {}};
        for (std::size_t i = 1; i < fields.size(); ++i) {
            const auto v = detail::parse_number(fields[i]);
            if (!v) {
                throw IngestError("non-numeric value '" + std::string(fields[i]) + "'", line_no);
            }
            s.values.push_back(*v);
        }
        // Variable-length UCR series are padded with trailing NaN.
        while (!s.values.empty() && std::isnan(s.values.back())) {
            s.values.pop_back();
        }
        for (double v : s.values) {
            if (!std::isfinite(v)) {
                throw IngestError("non-finite value inside series", line_no);
            }
        }
        if (s.values.empty()) {
            throw IngestError("series has no values", line_no);
        }
        out.push_back(std::move(s));
    }
    if (out.empty()) {
        throw IngestError("no series found", 0);
    }
    return out;
}

inline std::vector<LabeledSeries> ingest(const std::string& path, InputFormat format) {
    std::ifstream in(path);
    if (!in) {
        throw IngestError("cannot open '" + path + "'", 0);
    }
    return ingest(in, format, std::filesystem::path(path).filename().string());
}

} // namespace abba
