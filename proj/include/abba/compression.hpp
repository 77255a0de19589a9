#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "abba/error.hpp"
#include "abba/preprocessing.hpp"

namespace abba {

/// One linear piece of the polygonal chain: `len` time steps, value change `inc`.
struct Piece {
    std::size_t len = 1;
    double inc = 0.0;

    friend bool operator==(const Piece&, const Piece&) = default;
};

/// Compressed form of a series: t_0 plus the (len, inc) chain.
/// Invariant: the lengths sum to original_length (= N, the last index).
struct PieceSequence {
    double start_value = 0.0;
    std::vector<Piece> pieces;
    std::size_t original_length = 0;

    std::size_t size() const noexcept { return pieces.size(); }
};

inline constexpr std::size_t unbounded = std::numeric_limits<std::size_t>::max();

struct CompressionConfig {
    double tol = 0.1;
    std::size_t max_len = unbounded;
};

/// Squared distance between the samples values[start..end] and the chord
/// through (start, values[start]) and (end, values[end]). The endpoints
/// contribute nothing.
inline double chord_error(std::span<const double> values, std::size_t start, std::size_t end) {
    const double len = static_cast<double>(end - start);
    const double t0 = values[start];
    const double inc = values[end] - t0;
    double err = 0.0;
    for (std::size_t i = start + 1; i < end; ++i) {
        const double line = t0 + inc * (static_cast<double>(i - start) / len);
        const double d = line - values[i];
        err += d * d;
    }
    return err;
}

/// Error budget for a piece of length `len`: (len - 1) * tol^2.
inline double piece_budget(std::size_t len, double tol) {
    return static_cast<double>(len - 1) * tol * tol;
}

namespace detail {

// Running sums for the chord error of values[start..start+L] with
// u_x = values[start+x] - values[start]:
//   err(L) = m^2 * sum x^2 - 2 m * sum x u_x + sum u_x^2,  m = u_L / L.
// The expansion cancels badly when err is tiny relative to sum u_x^2, so
// any verdict that lands near the budget is settled by chord_error().
class ChordAccumulator {
public:
    ChordAccumulator(std::span<const double> values, std::size_t start)
        : values_(values), start_(start) {}

    // Includes sample start+len in the sums; returns the error of the
    // chord to that sample.
    double extend(std::size_t len) {
        const double x = static_cast<double>(len);
        const double u = values_[start_ + len] - values_[start_];
        sum_xu_ += x * u;
        sum_uu_ += u * u;
        const double sum_xx = x * (x + 1.0) * (2.0 * x + 1.0) / 6.0;
        const double m = u / x;
        const double err = m * m * sum_xx - 2.0 * m * sum_xu_ + sum_uu_;
        scale_ = m * m * sum_xx + sum_uu_;
        return err;
    }

    double scale() const noexcept { return scale_; }

private:
    std::span<const double> values_;
    std::size_t start_;
    double sum_xu_ = 0.0;
    double sum_uu_ = 0.0;
    double scale_ = 0.0;
};

inline bool within_budget(std::span<const double> values, std::size_t start, std::size_t len,
                          double tol, ChordAccumulator& acc) {
    const double fast = acc.extend(len);
    const double budget = piece_budget(len, tol);
    const double slack = 1e-9 * (acc.scale() + budget) + 1e-300;
    if (fast < budget - slack) {
        return true;
    }
    if (fast > budget + slack) {
        return false;
    }
    return chord_error(values, start, start + len) <= budget;
}

} // namespace detail

/// Greedy adaptive polygonal-chain compression. From each breakpoint the
/// piece is extended one sample at a time while its chord error stays within
/// (len - 1) * tol^2 and len <= max_len; the first failing extension closes
/// the piece. The last piece always ends at index N.
inline PieceSequence compress(std::span<const double> series, const CompressionConfig& config) {
    validate_series(series);
    if (!(config.tol > 0.0) || !std::isfinite(config.tol)) {
        throw InvalidInput("tol must be a positive finite number");
    }
    if (config.max_len == 0) {
        throw InvalidInput("max_len must be at least 1");
    }

    const std::size_t last = series.size() - 1;
    PieceSequence out;
    out.start_value = series.front();
    out.original_length = last;

    std::size_t start = 0;
    while (start < last) {
        detail::ChordAccumulator acc(series, start);
        std::size_t len = 1;
        acc.extend(1);
        while (start + len < last && len < config.max_len &&
               detail::within_budget(series, start, len + 1, config.tol, acc)) {
            ++len;
        }
        out.pieces.push_back({len, series[start + len] - series[start]});
        start += len;
    }
    return out;
}

/// sqrt((N - n) * tol^2): the guaranteed Euclidean distance between a series
/// with last index N and its n-piece chain.
inline double compression_error_bound(std::size_t series_length, std::size_t n_pieces, double tol) {
    if (n_pieces < 1 || n_pieces > series_length) {
        throw InvalidInput("number of pieces must lie in [1, N]");
    }
    return std::sqrt(static_cast<double>(series_length - n_pieces)) * tol;
}

/// Breakpoints (i_j, value) of the chain, j = 0..n.
inline std::vector<std::pair<std::size_t, double>> chain_points(const PieceSequence& seq) {
    std::vector<std::pair<std::size_t, double>> points;
    points.reserve(seq.pieces.size() + 1);
    std::size_t index = 0;
    double value = seq.start_value;
    points.emplace_back(index, value);
    for (const auto& p : seq.pieces) {
        index += p.len;
        value += p.inc;
        points.emplace_back(index, value);
    }
    return points;
}

/// Linear interpolation of the chain onto the integer grid 0..N.
inline Series stitch(const PieceSequence& seq) {
    Series out;
    out.reserve(seq.original_length + 1);
    double value = seq.start_value;
    out.push_back(value);
    for (const auto& p : seq.pieces) {
        const double len = static_cast<double>(p.len);
        for (std::size_t x = 1; x <= p.len; ++x) {
            out.push_back(value + p.inc * (static_cast<double>(x) / len));
        }
        value += p.inc;
    }
    return out;
}

} // namespace abba
