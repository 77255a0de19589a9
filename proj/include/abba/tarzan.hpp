#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abba/error.hpp"

namespace abba {

/// Occurrence counts of arbitrary substrings of a fixed source string,
/// backed by a suffix automaton: O(|source|) states, count(w) in O(|w| log sigma).
/// Immutable after construction.
class FrequencyIndex {
public:
    explicit FrequencyIndex(std::string source) : source_(std::move(source)) {
        states_.reserve(2 * source_.size() + 1);
        states_.push_back({});
        std::size_t last = 0;
        for (char c : source_) {
            last = extend(last, c);
        }
        // Propagate end-position counts from longer to shorter states.
        std::vector<std::size_t> order(states_.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return states_[a].len > states_[b].len; });
        for (auto s : order) {
            if (states_[s].link >= 0) {
                states_[static_cast<std::size_t>(states_[s].link)].count += states_[s].count;
            }
        }
    }

    const std::string& source() const noexcept { return source_; }

    /// Number of (possibly overlapping) occurrences of `w`; the empty string
    /// occurs |source| + 1 times.
    std::size_t count(std::string_view w) const {
        if (w.empty()) {
            return source_.size() + 1;
        }
        std::size_t s = 0;
        for (char c : w) {
            const auto it = states_[s].next.find(c);
            if (it == states_[s].next.end()) {
                return 0;
            }
            s = it->second;
        }
        return states_[s].count;
    }

    /// Number of length-l windows of the source.
    std::size_t windows(std::size_t l) const {
        return l > source_.size() ? 0 : source_.size() - l + 1;
    }

private:
    struct State {
        std::size_t len = 0;
        long link = -1;
        std::size_t count = 0;
        std::map<char, std::size_t> next;
    };

    std::size_t extend(std::size_t last, char c) {
        const std::size_t cur = states_.size();
        states_.push_back({states_[last].len + 1, -1, 1, {}});
        long p = static_cast<long>(last);
        while (p >= 0 && !states_[static_cast<std::size_t>(p)].next.contains(c)) {
            states_[static_cast<std::size_t>(p)].next[c] = cur;
            p = states_[static_cast<std::size_t>(p)].link;
        }
        if (p < 0) {
            states_[cur].link = 0;
            return cur;
        }
        const std::size_t q = states_[static_cast<std::size_t>(p)].next[c];
        if (states_[static_cast<std::size_t>(p)].len + 1 == states_[q].len) {
            states_[cur].link = static_cast<long>(q);
            return cur;
        }
        const std::size_t clone = states_.size();
        State copy = states_[q];
        copy.len = states_[static_cast<std::size_t>(p)].len + 1;
        copy.count = 0;
        states_.push_back(std::move(copy));
        while (p >= 0) {
            auto& nx = states_[static_cast<std::size_t>(p)].next;
            const auto it = nx.find(c);
            if (it == nx.end() || it->second != q) {
                break;
            }
            it->second = clone;
            p = states_[static_cast<std::size_t>(p)].link;
        }
        states_[q].link = static_cast<long>(clone);
        states_[cur].link = static_cast<long>(clone);
        return cur;
    }

    std::string source_;
    std::vector<State> states_;
};

/// Expected number of occurrences of `w` among `test_windows` windows,
/// estimated from the reference. Observed substrings scale their reference
/// count by test_windows / ref_windows. Unobserved ones use the Markov
/// estimate p(w) = p(w[0..l-2]) p(w[1..l-1]) / p(w[1..l-2]) built from
/// window-normalised reference frequencies, and get 0 if any of those grams
/// is missing from the reference.
inline double expected_frequency(const FrequencyIndex& ref, std::string_view w, std::size_t test_windows) {
    require(!w.empty(), "substring must be non-empty");
    const std::size_t l = w.size();
    const auto windows = ref.windows(l);
    const auto direct = ref.count(w);
    if (direct > 0) {
        return static_cast<double>(direct) * static_cast<double>(test_windows) / static_cast<double>(windows);
    }
    if (l == 1) {
        return 0.0;
    }
    const auto prob = [&](std::string_view g) {
        const auto c = ref.count(g);
        const auto win = ref.windows(g.size());
        return win == 0 ? 0.0 : static_cast<double>(c) / static_cast<double>(win);
    };
    const double left = prob(w.substr(0, l - 1));
    const double right = prob(w.substr(1, l - 1));
    const double middle = prob(w.substr(1, l - 2));
    if (left == 0.0 || right == 0.0 || middle == 0.0) {
        return 0.0;
    }
    return static_cast<double>(test_windows) * left * right / middle;
}

/// (actual - expected) / max(actual, expected, 1): positive when the
/// substring is over-represented in the test string; always in [-1, 1].
inline double adapted_score(double actual, double expected) {
    require(actual >= 0.0 && expected >= 0.0, "frequencies must be non-negative");
    return (actual - expected) / std::max({actual, expected, 1.0});
}

struct AnomalyScores {
    std::size_t window = 0;
    /// Adapted score of the test window starting at each symbol.
    std::vector<double> window_scores;
    /// Per-sample score on the test series' time axis.
    std::vector<double> sample_scores;
};

/// Adapted TARZAN scores of every length-l window of `test` against `ref`.
/// `segment_lengths[j]` is the number of time samples symbol j of the test
/// string covers (zero allowed). A sample covered by several windows takes
/// the score of largest magnitude among them (earliest window on ties).
inline AnomalyScores tarzan_scores(std::string_view ref, std::string_view test, std::size_t l,
                                   std::span<const std::size_t> segment_lengths) {
    require(l >= 1, "window length must be at least 1");
    require(l <= test.size(), "window longer than the test string");
    require(segment_lengths.size() == test.size(), "one segment length per test symbol required");

    const FrequencyIndex ref_index{std::string(ref)};
    const FrequencyIndex test_index{std::string(test)};
    const std::size_t test_windows = test.size() - l + 1;

    AnomalyScores out;
    out.window = l;
    out.window_scores.resize(test_windows);
    for (std::size_t i = 0; i < test_windows; ++i) {
        const auto w = test.substr(i, l);
        const double actual = static_cast<double>(test_index.count(w));
        out.window_scores[i] = adapted_score(actual, expected_frequency(ref_index, w, test_windows));
    }

    // Per symbol: strongest score among the windows that contain it.
    std::vector<double> per_symbol(test.size(), 0.0);
    for (std::size_t j = 0; j < test.size(); ++j) {
        const std::size_t first = j + 1 >= l ? j + 1 - l : 0;
        const std::size_t last = std::min(j, test_windows - 1);
        double best = 0.0;
        for (std::size_t i = first; i <= last; ++i) {
            if (std::abs(out.window_scores[i]) > std::abs(best)) {
                best = out.window_scores[i];
            }
        }
        per_symbol[j] = best;
    }
    for (std::size_t j = 0; j < test.size(); ++j) {
        out.sample_scores.insert(out.sample_scores.end(), segment_lengths[j], per_symbol[j]);
    }
    return out;
}

/// Maximal runs of samples whose |score| exceeds `threshold`, as half-open
/// [begin, end) index pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> exceedance_intervals(std::span<const double> scores,
                                                                             double threshold) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t i = 0;
    while (i < scores.size()) {
        if (std::abs(scores[i]) > threshold) {
            std::size_t j = i;
            while (j < scores.size() && std::abs(scores[j]) > threshold) {
                ++j;
            }
            out.emplace_back(i, j);
            i = j;
        } else {
            ++i;
        }
    }
    return out;
}

} // namespace abba
