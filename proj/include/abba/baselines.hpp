#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "abba/alphabet.hpp"
#include "abba/error.hpp"
#include "abba/normal.hpp"
#include "abba/preprocessing.hpp"

namespace abba {

struct SaxConfig {
    std::size_t segment_len = 1;
    std::size_t k = 9;
};

/// How a Gaussian region is represented on reconstruction.
enum class RegionRepresentative {
    midpoint,   // quantile at the probability midpoint of the region
    region_mean // conditional mean of the distribution over the region
};

struct OneDSaxConfig {
    std::size_t segment_len = 1;
    std::size_t k_mean = 3;
    std::size_t k_slope = 3;
    /// Slopes are quantized against N(0, slope_variance_scale / segment_len).
    double slope_variance_scale = 0.03;
    RegionRepresentative slope_representative = RegionRepresentative::midpoint;
};

/// Standard normal quantiles at i / k, i = 1..k-1: the cut points that split
/// the bell curve into k regions of equal probability.
inline std::vector<double> gaussian_breakpoints(std::size_t k) {
    require(k >= 2, "need at least two regions");
    std::vector<double> out(k - 1);
    for (std::size_t i = 1; i < k; ++i) {
        out[i - 1] = normal_quantile(static_cast<double>(i) / static_cast<double>(k));
    }
    // Exact symmetry keeps the middle region centred on 0.
    for (std::size_t i = 0; i < out.size() / 2; ++i) {
        const double m = 0.5 * (out[out.size() - 1 - i] - out[i]);
        out[i] = -m;
        out[out.size() - 1 - i] = m;
    }
    if (out.size() % 2 == 1) {
        out[out.size() / 2] = 0.0;
    }
    return out;
}

/// Index of the region containing `v`; regions are [bp[i-1], bp[i]).
inline std::size_t region_of(double v, std::span<const double> breakpoints) {
    return static_cast<std::size_t>(std::upper_bound(breakpoints.begin(), breakpoints.end(), v) -
                                    breakpoints.begin());
}

/// Standard normal representative of region i out of k.
inline double region_value(std::size_t i, std::size_t k,
                           RegionRepresentative rep = RegionRepresentative::midpoint) {
    require(i < k, "region index out of range");
    if (rep == RegionRepresentative::midpoint) {
        if (2 * i + 1 == k) {
            return 0.0;
        }
        return normal_quantile((static_cast<double>(i) + 0.5) / static_cast<double>(k));
    }
    const auto pdf = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); };
    const double lo = i == 0 ? 0.0 : pdf(normal_quantile(static_cast<double>(i) / static_cast<double>(k)));
    const double hi = i + 1 == k ? 0.0 : pdf(normal_quantile(static_cast<double>(i + 1) / static_cast<double>(k)));
    return (lo - hi) * static_cast<double>(k);
}

namespace detail {

inline std::size_t segment_count(std::span<const double> series, std::size_t w) {
    require(w >= 1, "segment length must be at least 1");
    require(series.size() >= w, "series shorter than one segment");
    return series.size() / w;
}

} // namespace detail

/// Piecewise aggregate approximation: means of consecutive length-w
/// segments over the first floor(len / w) * w samples.
inline std::vector<double> paa(std::span<const double> series, std::size_t w) {
    const std::size_t n = detail::segment_count(series, w);
    std::vector<double> out(n);
    for (std::size_t s = 0; s < n; ++s) {
        double sum = 0.0;
        for (std::size_t i = 0; i < w; ++i) {
            sum += series[s * w + i];
        }
        out[s] = sum / static_cast<double>(w);
    }
    return out;
}

inline std::string sax_symbolize(std::span<const double> series, const SaxConfig& config) {
    require(config.k >= 2 && config.k <= alphabet_size(), "SAX alphabet size out of range");
    const auto bp = gaussian_breakpoints(config.k);
    std::string out;
    for (double m : paa(series, config.segment_len)) {
        out.push_back(symbol_for(region_of(m, bp)));
    }
    return out;
}

/// Piecewise-constant series, each segment at its region's probability
/// midpoint; length symbols.size() * segment_len.
inline Series sax_reconstruct(std::string_view symbols, const SaxConfig& config) {
    require(config.segment_len >= 1, "segment length must be at least 1");
    Series out;
    out.reserve(symbols.size() * config.segment_len);
    for (char c : symbols) {
        const double v = region_value(index_of(c), config.k);
        out.insert(out.end(), config.segment_len, v);
    }
    return out;
}

/// Least-squares line over x = 0..len-1 described by its mean value (the
/// fitted value at the segment centre) and slope.
struct SegmentLine {
    double mean = 0.0;
    double slope = 0.0;
};

inline SegmentLine fit_line(std::span<const double> segment) {
    const std::size_t n = segment.size();
    require(n >= 1, "empty segment");
    const double centre = 0.5 * static_cast<double>(n - 1);
    double sum = 0.0;
    for (double v : segment) {
        sum += v;
    }
    const double mean = sum / static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) - centre;
        sxy += x * (segment[i] - mean);
        sxx += x * x;
    }
    return {mean, sxx > 0.0 ? sxy / sxx : 0.0};
}

namespace detail {

inline void check_onedsax(const OneDSaxConfig& config) {
    require(config.k_mean >= 2 && config.k_slope >= 2, "1d-SAX needs at least two regions per axis");
    require(config.k_mean * config.k_slope <= alphabet_size(), "1d-SAX alphabet too large");
    require(config.slope_variance_scale > 0.0, "slope variance scale must be positive");
    require(config.segment_len >= 1, "segment length must be at least 1");
}

inline double slope_sigma(const OneDSaxConfig& config) {
    return std::sqrt(config.slope_variance_scale / static_cast<double>(config.segment_len));
}

} // namespace detail

/// One symbol per segment encoding (mean region, slope region) as
/// mean_region * k_slope + slope_region.
inline std::string onedsax_symbolize(std::span<const double> series, const OneDSaxConfig& config) {
    detail::check_onedsax(config);
    const std::size_t n = detail::segment_count(series, config.segment_len);
    const auto mean_bp = gaussian_breakpoints(config.k_mean);
    auto slope_bp = gaussian_breakpoints(config.k_slope);
    const double sigma = detail::slope_sigma(config);
    for (auto& b : slope_bp) {
        b *= sigma;
    }
    std::string out;
    for (std::size_t s = 0; s < n; ++s) {
        const auto line = fit_line(series.subspan(s * config.segment_len, config.segment_len));
        const auto code = region_of(line.mean, mean_bp) * config.k_slope + region_of(line.slope, slope_bp);
        out.push_back(symbol_for(code));
    }
    return out;
}

/// Emits, per symbol, the line through the region representatives of its
/// mean and slope.
inline Series onedsax_reconstruct(std::string_view symbols, const OneDSaxConfig& config) {
    detail::check_onedsax(config);
    const double sigma = detail::slope_sigma(config);
    const std::size_t w = config.segment_len;
    const double centre = 0.5 * static_cast<double>(w - 1);
    Series out;
    out.reserve(symbols.size() * w);
    for (char c : symbols) {
        const auto code = index_of(c);
        require(code < config.k_mean * config.k_slope, "1d-SAX symbol out of range");
        const double mean = region_value(code / config.k_slope, config.k_mean);
        const double slope =
            sigma * region_value(code % config.k_slope, config.k_slope, config.slope_representative);
        for (std::size_t i = 0; i < w; ++i) {
            out.push_back(mean + slope * (static_cast<double>(i) - centre));
        }
    }
    return out;
}

} // namespace abba
