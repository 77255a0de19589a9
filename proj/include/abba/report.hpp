#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "abba/distances.hpp"
#include "abba/error.hpp"
#include "abba/harness.hpp"
#include "abba/ingest.hpp"

namespace abba {

/// Shortest text that reads back to the same double.
inline std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

inline std::vector<std::string> parse_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

inline std::string_view status_name(RowStatus s) {
    switch (s) {
    case RowStatus::included: return "included";
    case RowStatus::excluded: return "excluded";
    case RowStatus::failed: return "failed";
    }
    return "";
}

inline constexpr std::size_t matrix_fixed_columns = 9;

} // namespace detail

inline std::vector<std::string> matrix_header() {
    std::vector<std::string> h{"id", "label", "status", "reason", "N", "n", "tol", "w", "abba_k"};
    for (auto d : all_distance_kinds) {
        for (auto a : all_algorithms) {
            h.push_back(std::string(to_string(a)) + "_" + std::string(to_string(d)));
        }
    }
    return h;
}

/// One line per series; error columns are named <algorithm>_<distance> and
/// left empty for excluded or failed series.
inline void write_matrix_csv(std::ostream& out, const ErrorMatrix& m) {
    const auto header = matrix_header();
    for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
    }
    out << '\n';
    for (const auto& r : m.rows) {
        const bool inc = r.status == RowStatus::included;
        out << detail::csv_field(r.id) << ',' << detail::csv_field(r.label) << ','
            << detail::status_name(r.status) << ',' << detail::csv_field(r.reason) << ',' << r.N << ','
            << (inc ? std::to_string(r.n) : "") << ',' << (inc ? format_number(r.tol) : "") << ','
            << (inc ? std::to_string(r.w) : "") << ',' << (inc ? std::to_string(r.abba_k) : "");
        for (auto d : all_distance_kinds) {
            for (auto a : all_algorithms) {
                out << ',' << (inc ? format_number(r.error(a, d)) : "");
            }
        }
        out << '\n';
    }
}

/// Parses the output of write_matrix_csv.
inline ErrorMatrix read_matrix_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) {
        throw IngestError("empty error matrix", 0);
    }
    if (detail::parse_csv_line(line) != matrix_header()) {
        throw IngestError("unexpected error matrix header", 1);
    }
    const auto header_size = matrix_header().size();
    const auto number = [&](const std::string& s) {
        const auto v = detail::parse_number(s);
        if (!v) {
            throw IngestError("bad number '" + s + "'", line_no);
        }
        return *v;
    };
    const auto count = [&](const std::string& s) { return static_cast<std::size_t>(number(s)); };

    ErrorMatrix m;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) {
            continue;
        }
        const auto f = detail::parse_csv_line(line);
        if (f.size() != header_size) {
            throw IngestError("wrong number of columns", line_no);
        }
        ErrorRow r;
        r.id = f[0];
        r.label = f[1];
        if (f[2] == "included") {
            r.status = RowStatus::included;
        } else if (f[2] == "excluded") {
            r.status = RowStatus::excluded;
        } else if (f[2] == "failed") {
            r.status = RowStatus::failed;
        } else {
            throw IngestError("unknown status '" + f[2] + "'", line_no);
        }
        r.reason = f[3];
        r.N = count(f[4]);
        if (r.status == RowStatus::included) {
            r.n = count(f[5]);
            r.tol = number(f[6]);
            r.w = count(f[7]);
            r.abba_k = count(f[8]);
            std::size_t col = detail::matrix_fixed_columns;
            for (auto d : all_distance_kinds) {
                for (auto a : all_algorithms) {
                    r.errors[static_cast<std::size_t>(a)][static_cast<std::size_t>(d)] = number(f[col++]);
                }
            }
        }
        m.rows.push_back(std::move(r));
    }
    return m;
}

/// Step points of the profile curves: one line per distinct finite ratio
/// (always including theta = 1) with each curve's value there.
inline void write_profile_csv(std::ostream& out, const std::vector<ProfileCurve>& curves) {
    std::set<double> thetas{1.0};
    for (const auto& c : curves) {
        for (double r : c.ratios) {
            if (std::isfinite(r)) {
                thetas.insert(r);
            }
        }
    }
    out << "theta";
    for (const auto& c : curves) {
        out << ',' << detail::csv_field(c.algorithm);
    }
    out << '\n';
    for (double t : thetas) {
        out << format_number(t);
        for (const auto& c : curves) {
            out << ',' << format_number(c(t));
        }
        out << '\n';
    }
}

} // namespace abba
