#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "abba/ingest.hpp"
#include "abba/preprocessing.hpp"

namespace abba::synthetic {

/// Seeded generator with distribution code of its own, so that generated
/// series are identical on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(engine_() % span);
    }

    /// Standard normal via Box-Muller.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline Series sine(std::size_t length, double period, double phase = 0.0, double amplitude = 1.0) {
    Series out(length);
    for (std::size_t i = 0; i < length; ++i) {
        out[i] = amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / period + phase);
    }
    return out;
}

inline Series random_walk(Rng& rng, std::size_t length, double step = 1.0) {
    Series out(length);
    double v = 0.0;
    for (auto& x : out) {
        x = v;
        v += step * rng.normal();
    }
    return out;
}

inline Series white_noise(Rng& rng, std::size_t length, double sigma = 1.0) {
    Series out(length);
    for (auto& x : out) {
        x = sigma * rng.normal();
    }
    return out;
}

inline void add_noise(Rng& rng, Series& s, double sigma) {
    for (auto& x : s) {
        x += sigma * rng.normal();
    }
}

/// Moving average over a centred window of 2 * half + 1 samples.
inline Series smooth(const Series& s, std::size_t half) {
    Series out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(s.size() - 1, i + half);
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            sum += s[j];
        }
        out[i] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

/// Series family used for randomized property checks: smooth and rough
/// signals of random length in [min_len, max_len].
inline Series random_series(Rng& rng, std::size_t min_len, std::size_t max_len) {
    const auto len = static_cast<std::size_t>(rng.integer(static_cast<std::int64_t>(min_len),
                                                          static_cast<std::int64_t>(max_len)));
    switch (rng.integer(0, 4)) {
    case 0: return random_walk(rng, len);
    case 1: {
        auto s = sine(len, rng.uniform(10.0, 200.0), rng.uniform(0.0, 6.28));
        add_noise(rng, s, rng.uniform(0.0, 0.3));
        return s;
    }
    case 2: return white_noise(rng, len);
    case 3: return smooth(random_walk(rng, len), static_cast<std::size_t>(rng.integer(1, 8)));
    default: {
        auto s = random_walk(rng, len, 0.2);
        const auto jumps = rng.integer(1, 6);
        for (std::int64_t j = 0; j < jumps; ++j) {
            const auto at = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(len - 1)));
            const double h = rng.uniform(-5.0, 5.0);
            for (std::size_t i = at; i < len; ++i) {
                s[i] += h;
            }
        }
        return s;
    }
    }
}

/// Slowly varying process with daily-cycle-like oscillation and sensor
/// noise, standing in for a long industrial temperature record.
inline Series plant_temperature(Rng& rng, std::size_t length) {
    auto drift = smooth(random_walk(rng, length, 0.15), 40);
    Series out(length);
    for (std::size_t i = 0; i < length; ++i) {
        const double t = static_cast<double>(i);
        out[i] = drift[i] + 2.0 * std::sin(2.0 * std::numbers::pi * t / 480.0) +
                 0.6 * std::sin(2.0 * std::numbers::pi * t / 97.0);
    }
    add_noise(rng, out, 0.08);
    return out;
}

/// The bundled 20-series comparison corpus: sines, trends, steps, random
/// walks, chirps and noise mixes of lengths 150..900.
inline std::vector<LabeledSeries> mini_corpus(std::uint64_t seed = 2019) {
    Rng rng(seed);
    std::vector<LabeledSeries> out;
    const auto add = [&](std::string label, Series s) {
        out.push_back({"mini:" + std::to_string(out.size()), std::move(label), std::move(s)});
    };
    for (int i = 0; i < 4; ++i) {
        const auto len = static_cast<std::size_t>(rng.integer(200, 600));
        auto s = sine(len, rng.uniform(30.0, 90.0), rng.uniform(0.0, 6.28));
        add_noise(rng, s, 0.03);
        add("sine", std::move(s));
    }
    for (int i = 0; i < 3; ++i) {
        const auto len = static_cast<std::size_t>(rng.integer(300, 800));
        auto s = sine(len, rng.uniform(40.0, 80.0), 0.0);
        const double slope = rng.uniform(-4.0, 4.0) / static_cast<double>(len);
        for (std::size_t t = 0; t < len; ++t) {
            s[t] += slope * static_cast<double>(t);
        }
        add_noise(rng, s, 0.05);
        add("trend_sine", std::move(s));
    }
    for (int i = 0; i < 3; ++i) {
        const auto len = static_cast<std::size_t>(rng.integer(200, 500));
        Series s(len, 0.0);
        double level = 0.0;
        for (std::size_t t = 0; t < len; ++t) {
            if (t % 40 == 0) {
                level = rng.uniform(-2.0, 2.0);
            }
            s[t] = level;
        }
        add_noise(rng, s, 0.05);
        add("steps", std::move(s));
    }
    for (int i = 0; i < 4; ++i) {
        const auto len = static_cast<std::size_t>(rng.integer(300, 900));
        add("smooth_walk", smooth(random_walk(rng, len), 6));
    }
    for (int i = 0; i < 3; ++i) {
        const auto len = static_cast<std::size_t>(rng.integer(300, 700));
        Series s(len);
        const double f0 = rng.uniform(0.005, 0.01);
        const double f1 = rng.uniform(0.03, 0.05);
        for (std::size_t t = 0; t < len; ++t) {
            const double x = static_cast<double>(t) / static_cast<double>(len);
            s[t] = std::sin(2.0 * std::numbers::pi * static_cast<double>(t) * (f0 + 0.5 * (f1 - f0) * x));
        }
        add_noise(rng, s, 0.03);
        add("chirp", std::move(s));
    }
    for (int i = 0; i < 3; ++i) {
        const auto len = static_cast<std::size_t>(rng.integer(250, 600));
        auto s = sine(len, rng.uniform(50.0, 100.0), 0.0);
        auto t = sine(len, rng.uniform(12.0, 20.0), 1.0, 0.4);
        for (std::size_t j = 0; j < len; ++j) {
            s[j] += t[j];
        }
        add_noise(rng, s, 0.08);
        add("mixture", std::move(s));
    }
    return out;
}

} // namespace abba::synthetic
