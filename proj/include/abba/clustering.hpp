#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "abba/error.hpp"

namespace abba {

/// Population variance of `values`, computed with the corrected two-pass
/// formula so that a block of identical values yields exactly 0.
inline double population_variance(std::span<const double> values) {
    if (values.empty()) {
        return 0.0;
    }
    const double m = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / m;
    double s1 = 0.0;
    double s2 = 0.0;
    for (double v : values) {
        s1 += v - mean;
        s2 += (v - mean) * (v - mean);
    }
    return std::max(0.0, (s2 - s1 * s1 / m) / m);
}

/// Per-cluster population variances of `values` under `labels`.
inline std::vector<double> cluster_variances(std::span<const double> values,
                                             std::span<const std::size_t> labels,
                                             std::size_t k) {
    std::vector<std::vector<double>> members(k);
    for (std::size_t i = 0; i < values.size(); ++i) {
        members[labels[i]].push_back(values[i]);
    }
    std::vector<double> out(k);
    for (std::size_t c = 0; c < k; ++c) {
        out[c] = population_variance(members[c]);
    }
    return out;
}

/// Within-cluster sum of squares of a 1-D labelling.
inline double wcss_1d(std::span<const double> values, std::span<const std::size_t> labels,
                      std::size_t k) {
    std::vector<std::size_t> counts(k, 0);
    for (auto l : labels) {
        ++counts[l];
    }
    const auto vars = cluster_variances(values, labels, k);
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        total += vars[c] * static_cast<double>(counts[c]);
    }
    return total;
}

struct Clustering1d {
    std::size_t k = 0;
    /// Cluster of each input value; clusters are numbered by ascending value.
    std::vector<std::size_t> labels;
    double max_variance = 0.0;
    double wcss = 0.0;
};

namespace detail {

// Optimal contiguous partitions of sorted data, one layer per cluster count.
// Layer k is derived from layer k-1 with the divide-and-conquer argmin
// recursion; the optimal split point is monotone in the right end for the
// squared-deviation cost.
class SortedKMeans {
public:
    explicit SortedKMeans(std::vector<double> sorted) : x_(std::move(sorted)) {
        const std::size_t n = x_.size();
        const double shift = x_[n / 2];
        s1_.assign(n + 1, 0.0);
        s2_.assign(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double v = x_[i] - shift;
            s1_[i + 1] = s1_[i] + v;
            s2_[i + 1] = s2_[i] + v * v;
        }
        cost_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            cost_[i] = cost(0, i);
        }
        split_.push_back(std::vector<std::size_t>(n, 0));
    }

    std::size_t layers() const noexcept { return split_.size(); }

    void add_layer() {
        const std::size_t k = split_.size(); // index of the new layer (k+1 clusters)
        const std::size_t n = x_.size();
        std::vector<double> next(n, std::numeric_limits<double>::infinity());
        std::vector<std::size_t> arg(n, 0);
        if (k < n) {
            solve(k, k, n - 1, k, n - 1, next, arg);
        }
        cost_ = std::move(next);
        split_.push_back(std::move(arg));
    }

    /// Boundaries of the optimal partition with `layers()` clusters: the
    /// returned vector holds the first sorted index of each cluster.
    std::vector<std::size_t> starts() const {
        const std::size_t k = split_.size();
        std::vector<std::size_t> out(k, 0);
        std::size_t right = x_.size() - 1;
        for (std::size_t layer = k; layer-- > 0;) {
            const std::size_t first = split_[layer][right];
            out[layer] = first;
            if (layer > 0) {
                right = first - 1;
            }
        }
        return out;
    }

private:
    // Sum of squared deviations of sorted x[j..i].
    double cost(std::size_t j, std::size_t i) const {
        const double m = static_cast<double>(i - j + 1);
        const double s = s1_[i + 1] - s1_[j];
        const double ss = s2_[i + 1] - s2_[j];
        return std::max(0.0, ss - s * s / m);
    }

    void solve(std::size_t k, std::size_t lo, std::size_t hi, std::size_t opt_lo,
               std::size_t opt_hi, std::vector<double>& next, std::vector<std::size_t>& arg) {
        // Right ends in [lo, hi] with k+1 clusters; the last cluster starts in
        // [opt_lo, opt_hi] and previous clusters cover [0, start - 1].
        if (lo > hi) {
            return;
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = std::max(opt_lo, k);
        const std::size_t j_hi = std::min(opt_hi, mid);
        for (std::size_t j = std::max(opt_lo, k); j <= j_hi; ++j) {
            const double c = cost_[j - 1] + cost(j, mid);
            if (c < best) {
                best = c;
                best_j = j;
            }
        }
        next[mid] = best;
        arg[mid] = best_j;
        if (mid > lo) {
            solve(k, lo, mid - 1, opt_lo, best_j, next, arg);
        }
        solve(k, mid + 1, hi, best_j, opt_hi, next, arg);
    }

    std::vector<double> x_;
    std::vector<double> s1_, s2_;
    std::vector<double> cost_;                      // cost of the current layer per right end
    std::vector<std::vector<std::size_t>> split_;   // start of the last cluster per layer/right end
};

inline void check_k_range(std::size_t min_k, std::size_t max_k) {
    require(min_k >= 1, "min_k must be at least 1");
    require(min_k <= max_k, "min_k must not exceed max_k");
}

} // namespace detail

/// Optimal 1-D mean clustering with the smallest admissible k.
///
/// For k = min_k, min_k + 1, ... the WCSS-optimal partition is computed by
/// dynamic programming over the sorted values; the first k whose largest
/// cluster variance is at most tol_s^2 is returned. If no k up to max_k
/// qualifies, the optimal max_k partition is returned. k never exceeds the
/// number of values.
inline Clustering1d cluster_1d(std::span<const double> values, double tol_s, std::size_t min_k,
                               std::size_t max_k) {
    require(!values.empty(), "cannot cluster an empty set");
    detail::check_k_range(min_k, max_k);
    for (double v : values) {
        require(std::isfinite(v), "cluster input must be finite");
    }

    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> sorted(n);
    for (std::size_t i = 0; i < n; ++i) {
        sorted[i] = values[order[i]];
    }

    const std::size_t lo = std::min(min_k, n);
    const std::size_t hi = std::min(max_k, n);
    const double limit = tol_s * tol_s;

    detail::SortedKMeans dp(sorted);
    Clustering1d result;
    for (std::size_t k = 1; k <= hi; ++k) {
        if (dp.layers() < k) {
            dp.add_layer();
        }
        if (k < lo) {
            continue;
        }
        const auto starts = dp.starts();
        std::vector<std::size_t> labels(n);
        double max_var = 0.0;
        double wcss = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            const std::size_t first = starts[c];
            const std::size_t end = c + 1 < k ? starts[c + 1] : n;
            const std::span<const double> block(sorted.data() + first, end - first);
            const double var = population_variance(block);
            max_var = std::max(max_var, var);
            wcss += var * static_cast<double>(block.size());
            for (std::size_t i = first; i < end; ++i) {
                labels[order[i]] = c;
            }
        }
        result = {k, std::move(labels), max_var, wcss};
        if (max_var <= limit) {
            break;
        }
    }
    return result;
}

/// A point of the 2-D clustering problem.
using Point2 = std::array<double, 2>;

struct Clustering2d {
    std::size_t k = 0;
    std::vector<std::size_t> labels;
    std::vector<Point2> centers; // means of the clustered points
    double wcss = 0.0;
};

namespace detail {

inline double sq_dist(const Point2& a, const Point2& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

inline std::vector<Point2> farthest_point_seeds(std::span<const Point2> pts, std::size_t k,
                                                std::size_t first) {
    const std::size_t n = pts.size();
    std::vector<Point2> centers{pts[first]};
    std::vector<bool> used(n, false);
    used[first] = true;
    std::vector<double> nearest(n);
    for (std::size_t i = 0; i < n; ++i) {
        nearest[i] = sq_dist(pts[i], pts[first]);
    }
    while (centers.size() < k) {
        std::size_t pick = n;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!used[i] && nearest[i] > best) {
                best = nearest[i];
                pick = i;
            }
        }
        used[pick] = true;
        centers.push_back(pts[pick]);
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], sq_dist(pts[i], pts[pick]));
        }
    }
    return centers;
}

inline Clustering2d lloyd(std::span<const Point2> pts, std::vector<Point2> centers,
                          std::size_t max_iter = 300) {
    const std::size_t n = pts.size();
    const std::size_t k = centers.size();
    std::vector<std::size_t> labels(n, k);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = sq_dist(pts[i], centers[0]);
            for (std::size_t c = 1; c < k; ++c) {
                const double d = sq_dist(pts[i], centers[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (labels[i] != best) {
                labels[i] = best;
                changed = true;
            }
        }

        std::vector<std::size_t> counts(k, 0);
        for (auto l : labels) {
            ++counts[l];
        }
        // Empty cluster: take the point of the largest cluster that lies
        // farthest from its center.
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0) {
                continue;
            }
            const auto largest = static_cast<std::size_t>(
                std::max_element(counts.begin(), counts.end()) - counts.begin());
            std::size_t far = n;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (labels[i] == largest) {
                    const double d = sq_dist(pts[i], centers[largest]);
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
            }
            labels[far] = c;
            --counts[largest];
            counts[c] = 1;
            changed = true;
        }

        std::vector<Point2> sums(k, Point2{0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i) {
            sums[labels[i]][0] += pts[i][0];
            sums[labels[i]][1] += pts[i][1];
        }
        for (std::size_t c = 0; c < k; ++c) {
            const double m = static_cast<double>(counts[c]);
            centers[c] = {sums[c][0] / m, sums[c][1] / m};
        }
        if (!changed) {
            break;
        }
    }
    double wcss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        wcss += sq_dist(pts[i], centers[labels[i]]);
    }
    return {k, std::move(labels), std::move(centers), wcss};
}

} // namespace detail

/// Lloyd k-means for a fixed k: `restarts` farthest-point initialisations
/// whose first center is drawn from a seeded generator; the lowest-WCSS
/// result wins. Deterministic for a given seed.
inline Clustering2d kmeans_2d(std::span<const Point2> pts, std::size_t k, std::uint64_t seed,
                              std::size_t restarts = 4) {
    require(!pts.empty(), "cannot cluster an empty set");
    require(k >= 1 && k <= pts.size(), "k must lie in [1, number of points]");
    std::mt19937_64 rng(seed);
    Clustering2d best;
    best.wcss = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
        const auto first = static_cast<std::size_t>(rng() % pts.size());
        auto candidate = detail::lloyd(pts, detail::farthest_point_seeds(pts, k, first));
        if (candidate.wcss < best.wcss) {
            best = std::move(candidate);
        }
    }
    return best;
}

} // namespace abba
