#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "abba/error.hpp"
#include "abba/preprocessing.hpp"

namespace abba {

enum class DistanceKind { euclid, dtw, euclid_diff, dtw_diff };

inline constexpr DistanceKind all_distance_kinds[] = {DistanceKind::euclid, DistanceKind::dtw,
                                                      DistanceKind::euclid_diff, DistanceKind::dtw_diff};

inline constexpr std::string_view to_string(DistanceKind kind) {
    switch (kind) {
    case DistanceKind::euclid: return "euclid";
    case DistanceKind::dtw: return "dtw";
    case DistanceKind::euclid_diff: return "euclid_diff";
    case DistanceKind::dtw_diff: return "dtw_diff";
    }
    return "";
}

inline std::optional<DistanceKind> parse_distance_kind(std::string_view name) {
    for (auto kind : all_distance_kinds) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

inline double euclid(std::span<const double> a, std::span<const double> b) {
    require(a.size() == b.size(), "euclid needs series of equal length");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

/// Dynamic time warping: square root of the smallest sum of squared
/// differences along a monotone warping path (steps (1,0), (0,1), (1,1)),
/// without window constraint. Two rows of the cost table are kept.
inline double dtw(std::span<const double> a, std::span<const double> b) {
    require(!a.empty() && !b.empty(), "dtw needs non-empty series");
    // Keep the shorter series along the row to bound memory.
    if (b.size() > a.size()) {
        std::swap(a, b);
    }
    const std::size_t m = b.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(m, inf);
    std::vector<double> cur(m, inf);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double d = a[i] - b[j];
            double best;
            if (i == 0 && j == 0) {
                best = 0.0;
            } else {
                best = inf;
                if (i > 0) {
                    best = std::min(best, prev[j]);
                }
                if (j > 0) {
                    best = std::min(best, cur[j - 1]);
                }
                if (i > 0 && j > 0) {
                    best = std::min(best, prev[j - 1]);
                }
            }
            cur[j] = best + d * d;
        }
        std::swap(prev, cur);
    }
    return std::sqrt(prev[m - 1]);
}

/// Applies difference() to both series and measures with the base kind.
inline double differenced(DistanceKind base, std::span<const double> a, std::span<const double> b) {
    const auto da = difference(a);
    const auto db = difference(b);
    switch (base) {
    case DistanceKind::euclid:
    case DistanceKind::euclid_diff: return euclid(da, db);
    case DistanceKind::dtw:
    case DistanceKind::dtw_diff: return dtw(da, db);
    }
    return 0.0;
}

inline double distance(DistanceKind kind, std::span<const double> a, std::span<const double> b) {
    switch (kind) {
    case DistanceKind::euclid: return euclid(a, b);
    case DistanceKind::dtw: return dtw(a, b);
    case DistanceKind::euclid_diff: return differenced(DistanceKind::euclid, a, b);
    case DistanceKind::dtw_diff: return differenced(DistanceKind::dtw, a, b);
    }
    return 0.0;
}

} // namespace abba
