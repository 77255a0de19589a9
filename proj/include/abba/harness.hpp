#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "abba/baselines.hpp"
#include "abba/compression.hpp"
#include "abba/digitization.hpp"
#include "abba/distances.hpp"
#include "abba/error.hpp"
#include "abba/ingest.hpp"
#include "abba/preprocessing.hpp"
#include "abba/reconstruction.hpp"

namespace abba {

/// Parameters of the ABBA / SAX / 1d-SAX reconstruction comparison.
struct ExperimentConfig {
    /// Tolerances tried in order: tol_step, 2 tol_step, ..., tol_steps * tol_step.
    double tol_step = 0.05;
    std::size_t tol_steps = 10;
    /// Accept a tolerance once n <= compression_target * N.
    double compression_target = 0.20;
    std::size_t min_series_len = 100;
    std::size_t min_pieces = 9;
    std::size_t k = 9;
    std::size_t onedsax_k_mean = 3;
    std::size_t onedsax_k_slope = 3;
    double scl = 0.0;
    double s = 0.2;
    std::uint64_t seed = 0;

    std::vector<double> tol_schedule() const {
        std::vector<double> out(tol_steps);
        for (std::size_t i = 0; i < tol_steps; ++i) {
            out[i] = tol_step * static_cast<double>(i + 1);
        }
        return out;
    }
};

enum class Exclusion { too_short, too_noisy, few_pieces };

inline constexpr std::string_view to_string(Exclusion e) {
    switch (e) {
    case Exclusion::too_short: return "too_short";
    case Exclusion::too_noisy: return "too_noisy";
    case Exclusion::few_pieces: return "few_pieces";
    }
    return "";
}

struct ToleranceChoice {
    double tol = 0.0;
    PieceSequence pieces;
};

/// Escalates the tolerance along the schedule until the chain has at most
/// compression_target * N pieces. Series that are too short, still too
/// long at the largest tolerance, or end up with fewer than min_pieces
/// pieces are excluded. Expects a z-normalized series.
inline std::variant<ToleranceChoice, Exclusion> select_tolerance(std::span<const double> series,
                                                                 const ExperimentConfig& config = {}) {
    if (series.size() < config.min_series_len || series.size() < 2) {
        return Exclusion::too_short;
    }
    const double big_n = static_cast<double>(series.size() - 1);
    for (double tol : config.tol_schedule()) {
        auto pieces = compress(series, {tol, unbounded});
        if (static_cast<double>(pieces.size()) <= config.compression_target * big_n + 1e-9) {
            if (pieces.size() < config.min_pieces) {
                return Exclusion::few_pieces;
            }
            return ToleranceChoice{tol, std::move(pieces)};
        }
    }
    return Exclusion::too_noisy;
}

/// Tolerance from the grid step, 2 step, ..., steps * step whose chain
/// length is closest to `target_pieces` (smallest tolerance on ties).
inline double tolerance_for_length(std::span<const double> series, std::size_t target_pieces,
                                   double step = 0.005, std::size_t steps = 400) {
    require(step > 0.0 && steps > 0, "empty tolerance grid");
    double best_tol = step;
    std::size_t best_gap = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 1; i <= steps; ++i) {
        const double tol = step * static_cast<double>(i);
        const auto n = compress(series, {tol, unbounded}).size();
        const auto gap = n > target_pieces ? n - target_pieces : target_pieces - n;
        if (gap < best_gap) {
            best_gap = gap;
            best_tol = tol;
        }
        if (n < target_pieces && gap > best_gap) {
            break;
        }
    }
    return best_tol;
}

enum class Algorithm { abba, sax, onedsax };

inline constexpr std::array<Algorithm, 3> all_algorithms{Algorithm::abba, Algorithm::sax, Algorithm::onedsax};

inline constexpr std::string_view to_string(Algorithm a) {
    switch (a) {
    case Algorithm::abba: return "ABBA";
    case Algorithm::sax: return "SAX";
    case Algorithm::onedsax: return "1dSAX";
    }
    return "";
}

enum class RowStatus { included, excluded, failed };

/// One series of the comparison. errors[algorithm][distance kind] is the
/// distance between the normalized series and the reconstruction; SAX and
/// 1d-SAX are measured on the first n * w samples they encode.
struct ErrorRow {
    std::string id;
    std::string label;
    RowStatus status = RowStatus::included;
    std::string reason; // exclusion reason or failure message
    std::size_t N = 0;  // last index of the series
    std::size_t n = 0;  // number of pieces
    double tol = 0.0;
    std::size_t w = 0;  // SAX segment length
    std::size_t abba_k = 0;
    std::array<std::array<double, 4>, 3> errors{};

    double error(Algorithm a, DistanceKind d) const {
        return errors[static_cast<std::size_t>(a)][static_cast<std::size_t>(d)];
    }
};

struct ErrorMatrix {
    std::vector<ErrorRow> rows;

    std::vector<const ErrorRow*> included() const {
        std::vector<const ErrorRow*> out;
        for (const auto& r : rows) {
            if (r.status == RowStatus::included) {
                out.push_back(&r);
            }
        }
        return out;
    }

    /// Included rows x algorithms for one distance.
    std::vector<std::vector<double>> table(DistanceKind d) const {
        std::vector<std::vector<double>> out;
        for (const auto* r : included()) {
            std::vector<double> row;
            for (auto a : all_algorithms) {
                row.push_back(r->error(a, d));
            }
            out.push_back(std::move(row));
        }
        return out;
    }
};

struct Reconstructions {
    Series normalized;
    Series abba;
    Series sax;
    Series onedsax;
    std::size_t w = 0;
    std::size_t abba_k = 0;
};

/// Symbolizes and reconstructs one normalized series with all three methods
/// using n pieces / segments.
inline Reconstructions reconstruct_all(const Series& normalized, const ToleranceChoice& choice,
                                       const ExperimentConfig& config) {
    Reconstructions out;
    out.normalized = normalized;
    DigitizationConfig dc;
    dc.scl = config.scl;
    dc.s = config.s;
    dc.min_k = 1;
    dc.max_k = config.k;
    dc.seed = config.seed;
    const auto symbolic = digitize(choice.pieces, dc, choice.tol);
    out.abba_k = symbolic.model.k;
    out.abba = reconstruct(symbolic);

    const std::size_t n = choice.pieces.size();
    out.w = normalized.size() / n;
    const std::span<const double> head(normalized.data(), n * out.w);
    const SaxConfig sax{out.w, config.k};
    out.sax = sax_reconstruct(sax_symbolize(head, sax), sax);
    OneDSaxConfig one;
    one.segment_len = out.w;
    one.k_mean = config.onedsax_k_mean;
    one.k_slope = config.onedsax_k_slope;
    out.onedsax = onedsax_reconstruct(onedsax_symbolize(head, one), one);
    return out;
}

/// Runs the comparison over a corpus; one row per input series in input
/// order. Per-series failures become `failed` rows.
inline ErrorMatrix run_comparison(std::span<const LabeledSeries> corpus, const ExperimentConfig& config = {}) {
    require(!corpus.empty(), "empty corpus");
    require(config.onedsax_k_mean * config.onedsax_k_slope == config.k,
            "1d-SAX alphabet must factor the symbol count");
    ErrorMatrix matrix;
    for (const auto& item : corpus) {
        ErrorRow row;
        row.id = item.id;
        row.label = item.label;
        row.N = item.values.empty() ? 0 : item.values.size() - 1;
        try {
            if (item.values.size() < config.min_series_len) {
                row.status = RowStatus::excluded;
                row.reason = to_string(Exclusion::too_short);
                matrix.rows.push_back(std::move(row));
                continue;
            }
            const auto norm = normalize(item.values);
            auto choice = select_tolerance(norm.values, config);
            if (const auto* ex = std::get_if<Exclusion>(&choice)) {
                row.status = RowStatus::excluded;
                row.reason = to_string(*ex);
                matrix.rows.push_back(std::move(row));
                continue;
            }
            const auto& chosen = std::get<ToleranceChoice>(choice);
            row.tol = chosen.tol;
            row.n = chosen.pieces.size();
            const auto rec = reconstruct_all(norm.values, chosen, config);
            row.w = rec.w;
            row.abba_k = rec.abba_k;
            const std::span<const double> head(norm.values.data(), rec.sax.size());
            for (auto d : all_distance_kinds) {
                const auto di = static_cast<std::size_t>(d);
                row.errors[0][di] = distance(d, norm.values, rec.abba);
                row.errors[1][di] = distance(d, head, rec.sax);
                row.errors[2][di] = distance(d, head, rec.onedsax);
            }
        } catch (const std::exception& e) {
            row.status = RowStatus::failed;
            row.reason = e.what();
        }
        matrix.rows.push_back(std::move(row));
    }
    return matrix;
}

/// Performance profile of one algorithm: p(theta) is the fraction of
/// problems on which its error is within a factor theta of the best error.
struct ProfileCurve {
    std::string algorithm;
    std::vector<double> ratios; // sorted ascending; +inf when the best is 0 and this entry is not

    double operator()(double theta) const {
        if (ratios.empty()) {
            return 0.0;
        }
        const auto within = std::upper_bound(ratios.begin(), ratios.end(), theta) - ratios.begin();
        return static_cast<double>(within) / static_cast<double>(ratios.size());
    }
};

/// Profiles from a problems x algorithms table of non-negative errors.
/// A zero entry in a row whose minimum is zero has ratio 1.
inline std::vector<ProfileCurve> performance_profile(const std::vector<std::vector<double>>& table,
                                                     std::span<const std::string> names) {
    require(!table.empty(), "empty error table");
    const std::size_t algs = table.front().size();
    require(algs > 0 && names.size() == algs, "one name per algorithm required");
    std::vector<ProfileCurve> curves(algs);
    for (std::size_t a = 0; a < algs; ++a) {
        curves[a].algorithm = names[a];
    }
    for (const auto& row : table) {
        require(row.size() == algs, "ragged error table");
        double best = std::numeric_limits<double>::infinity();
        for (double v : row) {
            require(v >= 0.0, "errors must be non-negative");
            best = std::min(best, v);
        }
        for (std::size_t a = 0; a < algs; ++a) {
            double ratio;
            if (row[a] == best) {
                ratio = 1.0;
            } else if (best == 0.0) {
                ratio = std::numeric_limits<double>::infinity();
            } else {
                ratio = row[a] / best;
            }
            curves[a].ratios.push_back(ratio);
        }
    }
    for (auto& c : curves) {
        std::sort(c.ratios.begin(), c.ratios.end());
    }
    return curves;
}

inline std::vector<ProfileCurve> performance_profile(const ErrorMatrix& matrix, DistanceKind d) {
    std::vector<std::string> names;
    for (auto a : all_algorithms) {
        names.emplace_back(to_string(a));
    }
    return performance_profile(matrix.table(d), names);
}

} // namespace abba
