#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "abba/alphabet.hpp"
#include "abba/clustering.hpp"
#include "abba/compression.hpp"
#include "abba/error.hpp"

namespace abba {

inline constexpr double scl_infinity = std::numeric_limits<double>::infinity();

struct DigitizationConfig {
    /// Weight of the piece lengths relative to the increments; 0 clusters
    /// increments only, infinity clusters lengths only.
    double scl = 0.0;
    /// Standard-deviation multiplier in the digitization tolerance.
    double s = 0.2;
    std::size_t min_k = 1;
    /// Capped at alphabet_size().
    std::size_t max_k = alphabet_size();
    std::uint64_t seed = 0;
};

/// Cluster description needed to reverse the symbolic form. Centers are
/// means of the unscaled (len, inc) tuples; cluster i is symbol i, and
/// clusters are numbered by descending size.
struct ClusterModel {
    std::size_t k = 0;
    std::vector<Point2> centers;          // {mean_len, mean_inc}
    std::vector<std::size_t> assignments; // cluster of every clustered tuple
    std::vector<std::size_t> sizes;       // tuples per cluster
    double sigma_len = 0.0;
    double sigma_inc = 0.0;
    double var_len_max = 0.0;
    double var_inc_max = 0.0;
    double tol_s = 0.0;
    double scl = 0.0;
};

struct SymbolicSeries {
    std::string symbols;
    ClusterModel model;
    double start_value = 0.0;
    std::size_t original_length = 0;
};

/// Digitization tolerance (tol / s) * sqrt(6 (N - n) / (N n)) that balances
/// the expected digitization error against the compression bound.
inline double compute_tol_s(double tol, std::size_t series_length, std::size_t n_pieces, double s) {
    require(n_pieces > 0, "need at least one piece");
    require(n_pieces < series_length, "tol_s needs fewer pieces than time steps");
    require(tol > 0.0 && s > 0.0, "tol and s must be positive");
    const double big_n = static_cast<double>(series_length);
    const double n = static_cast<double>(n_pieces);
    return (tol / s) * std::sqrt(6.0 * (big_n - n) / (big_n * n));
}

/// Population standard deviation; used for sigma_len and sigma_inc.
inline double tuple_sigma(std::span<const double> values) {
    return std::sqrt(population_variance(values));
}

/// (scl * len / sigma_len, inc / sigma_inc) for every piece. A zero sigma
/// maps its coordinate to 0. For scl = infinity the first coordinate is
/// len / sigma_len (the increments then play no part in clustering).
inline std::vector<Point2> scale_tuples(std::span<const Piece> pieces, double scl) {
    std::vector<double> lens(pieces.size());
    std::vector<double> incs(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        lens[i] = static_cast<double>(pieces[i].len);
        incs[i] = pieces[i].inc;
    }
    const double sl = tuple_sigma(lens);
    const double si = tuple_sigma(incs);
    const double weight = std::isinf(scl) ? 1.0 : scl;
    std::vector<Point2> out(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        out[i][0] = (sl > 0.0 && weight != 0.0) ? weight * lens[i] / sl : 0.0;
        out[i][1] = si > 0.0 ? incs[i] / si : 0.0;
    }
    return out;
}

struct TupleVariances {
    double len_max = 0.0;
    double inc_max = 0.0;
};

/// Largest per-cluster variances of the unscaled lengths and increments.
inline TupleVariances max_cluster_variances(std::span<const Piece> pieces,
                                            std::span<const std::size_t> labels, std::size_t k) {
    std::vector<double> lens(pieces.size());
    std::vector<double> incs(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        lens[i] = static_cast<double>(pieces[i].len);
        incs[i] = pieces[i].inc;
    }
    const auto vl = cluster_variances(lens, labels, k);
    const auto vi = cluster_variances(incs, labels, k);
    return {*std::max_element(vl.begin(), vl.end()), *std::max_element(vi.begin(), vi.end())};
}

struct Clustering2dScan {
    std::size_t k = 0;
    std::vector<std::size_t> labels;
    TupleVariances variances;
};

/// k-means on the scaled tuples for k = min_k, min_k + 1, ...; accepts the
/// first k with max(scl * Var_len, Var_inc) <= tol_s^2 measured on the
/// unscaled tuples, else returns the max_k clustering.
inline Clustering2dScan cluster_2d(std::span<const Piece> pieces, double tol_s, double scl,
                                   std::size_t min_k, std::size_t max_k, std::uint64_t seed) {
    require(!pieces.empty(), "cannot cluster an empty set");
    require(scl > 0.0 && std::isfinite(scl), "2-D clustering needs 0 < scl < infinity");
    detail::check_k_range(min_k, max_k);

    const auto pts = scale_tuples(pieces, scl);
    const std::size_t lo = std::min(min_k, pieces.size());
    const std::size_t hi = std::min(max_k, pieces.size());
    const double limit = tol_s * tol_s;
    Clustering2dScan result;
    for (std::size_t k = lo; k <= hi; ++k) {
        auto km = kmeans_2d(pts, k, seed + k);
        const auto vars = max_cluster_variances(pieces, km.labels, k);
        result = {k, std::move(km.labels), vars};
        if (std::max(scl * vars.len_max, vars.inc_max) <= limit) {
            break;
        }
    }
    return result;
}

namespace detail {

// Renumbers clusters by descending size, ties by first occurrence.
inline std::vector<std::size_t> frequency_order(std::span<const std::size_t> labels, std::size_t k) {
    std::vector<std::size_t> counts(k, 0);
    std::vector<std::size_t> first(k, labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        ++counts[labels[i]];
        first[labels[i]] = std::min(first[labels[i]], i);
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (counts[a] != counts[b]) {
            return counts[a] > counts[b];
        }
        return first[a] < first[b];
    });
    std::vector<std::size_t> rank(k);
    for (std::size_t r = 0; r < k; ++r) {
        rank[order[r]] = r;
    }
    return rank;
}

inline ClusterModel build_model(std::span<const Piece> pieces, std::vector<std::size_t> labels,
                                std::size_t k, double tol_s, double scl) {
    const auto rank = frequency_order(labels, k);
    for (auto& l : labels) {
        l = rank[l];
    }
    ClusterModel model;
    model.k = k;
    model.tol_s = tol_s;
    model.scl = scl;
    model.centers.assign(k, Point2{0.0, 0.0});
    model.sizes.assign(k, 0);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        model.centers[labels[i]][0] += static_cast<double>(pieces[i].len);
        model.centers[labels[i]][1] += pieces[i].inc;
        ++model.sizes[labels[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
        const double m = static_cast<double>(model.sizes[c]);
        model.centers[c][0] /= m;
        model.centers[c][1] /= m;
    }
    std::vector<double> lens(pieces.size());
    std::vector<double> incs(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        lens[i] = static_cast<double>(pieces[i].len);
        incs[i] = pieces[i].inc;
    }
    model.sigma_len = tuple_sigma(lens);
    model.sigma_inc = tuple_sigma(incs);
    const auto vars = max_cluster_variances(pieces, labels, k);
    model.var_len_max = vars.len_max;
    model.var_inc_max = vars.inc_max;
    model.assignments = std::move(labels);
    return model;
}

inline ClusterModel cluster_pieces(std::span<const Piece> pieces, std::size_t total_length,
                                   const DigitizationConfig& config, double tol) {
    require(!pieces.empty(), "nothing to digitize");
    require(config.scl >= 0.0, "scl must be non-negative");
    detail::check_k_range(config.min_k, config.max_k);
    const std::size_t n = pieces.size();
    // Every step its own piece: the limit of the tol_s formula is 0.
    const double tol_s = n >= total_length ? 0.0 : compute_tol_s(tol, total_length, n, config.s);
    const std::size_t max_k = std::min(config.max_k, alphabet_size());
    const std::size_t min_k = std::min(config.min_k, max_k);

    if (config.scl == 0.0 || std::isinf(config.scl)) {
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; ++i) {
            values[i] = config.scl == 0.0 ? pieces[i].inc : static_cast<double>(pieces[i].len);
        }
        auto c = cluster_1d(values, tol_s, min_k, max_k);
        return build_model(pieces, std::move(c.labels), c.k, tol_s, config.scl);
    }
    auto c = cluster_2d(pieces, tol_s, config.scl, min_k, max_k, config.seed);
    return build_model(pieces, std::move(c.labels), c.k, tol_s, config.scl);
}

} // namespace detail

/// Clusters the pieces and replaces each by the symbol of its cluster.
/// 'a' is the most frequent symbol.
inline SymbolicSeries digitize(const PieceSequence& seq, const DigitizationConfig& config, double tol) {
    SymbolicSeries out;
    out.model = detail::cluster_pieces(seq.pieces, seq.original_length, config, tol);
    out.symbols.reserve(seq.pieces.size());
    for (auto label : out.model.assignments) {
        out.symbols.push_back(symbol_for(label));
    }
    out.start_value = seq.start_value;
    out.original_length = seq.original_length;
    return out;
}

/// Digitizes several chains against one shared cluster model so that their
/// strings are comparable. tol_s uses the pooled piece count and length;
/// the shared model's assignments cover the chains in order.
inline std::vector<SymbolicSeries> digitize_joint(std::span<const PieceSequence> seqs,
                                                  const DigitizationConfig& config, double tol) {
    std::vector<Piece> pooled;
    std::size_t total = 0;
    for (const auto& s : seqs) {
        pooled.insert(pooled.end(), s.pieces.begin(), s.pieces.end());
        total += s.original_length;
    }
    const auto model = detail::cluster_pieces(pooled, total, config, tol);
    std::vector<SymbolicSeries> out;
    std::size_t offset = 0;
    for (const auto& s : seqs) {
        SymbolicSeries sym;
        sym.model = model;
        for (std::size_t i = 0; i < s.pieces.size(); ++i) {
            sym.symbols.push_back(symbol_for(model.assignments[offset + i]));
        }
        offset += s.pieces.size();
        sym.start_value = s.start_value;
        sym.original_length = s.original_length;
        out.push_back(std::move(sym));
    }
    return out;
}

} // namespace abba
