#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "abba/error.hpp"

namespace abba {

/// Ordered samples t_0..t_N on a unit-spaced time grid.
using Series = std::vector<double>;

/// Throws InvalidInput unless every value is finite and there are at least
/// `min_length` samples.
inline void validate_series(std::span<const double> values, std::size_t min_length = 2) {
    if (values.size() < min_length) {
        throw InvalidInput("series too short");
    }
    if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
        throw InvalidInput("series contains non-finite values");
    }
}

struct Normalized {
    Series values;
    double mean = 0.0;
    double std = 0.0;      // population standard deviation of the input
    bool degenerate = false;

    /// Maps a series in normalized units back to the original units.
    Series denormalize(std::span<const double> normalized) const {
        Series out(normalized.size());
        std::transform(normalized.begin(), normalized.end(), out.begin(),
                       [this](double v) { return v * std + mean; });
        return out;
    }
};

/// Z-normalization with the population (divide-by-n) standard deviation.
/// A constant series is not an error: it comes back as zeros with std = 0
/// and `degenerate` set.
inline Normalized normalize(std::span<const double> series) {
    validate_series(series);
    const auto n = static_cast<double>(series.size());
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : series) {
        ss += (v - mean) * (v - mean);
    }
    const double std = std::sqrt(ss / n);

    Normalized out;
    out.mean = mean;
    out.values.assign(series.size(), 0.0);
    // Spread below rounding noise of the mean counts as constant.
    const double scale = std::max(1.0, std::abs(mean));
    if (!(std > 1e-14 * scale)) {
        out.degenerate = true;
        return out;
    }
    out.std = std;
    std::transform(series.begin(), series.end(), out.values.begin(),
                   [&](double v) { return (v - mean) / std; });
    return out;
}

/// First differences: out[i] = series[i+1] - series[i].
inline Series difference(std::span<const double> series) {
    if (series.size() < 2) {
        throw InvalidInput("difference needs at least two samples");
    }
    Series out(series.size() - 1);
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        out[i] = series[i + 1] - series[i];
    }
    return out;
}

/// Inverse of difference() given the first value.
inline Series cumulative_sum(std::span<const double> increments, double start) {
    Series out;
    out.reserve(increments.size() + 1);
    out.push_back(start);
    double acc = start;
    for (double d : increments) {
        acc += d;
        out.push_back(acc);
    }
    return out;
}

} // namespace abba
