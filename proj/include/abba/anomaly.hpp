#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abba/baselines.hpp"
#include "abba/compression.hpp"
#include "abba/digitization.hpp"
#include "abba/harness.hpp"
#include "abba/preprocessing.hpp"
#include "abba/reconstruction.hpp"
#include "abba/tarzan.hpp"

namespace abba {

enum class Symbolizer { abba, sax, onedsax };

inline std::optional<Symbolizer> parse_symbolizer(std::string_view name) {
    if (name == "abba") {
        return Symbolizer::abba;
    }
    if (name == "sax") {
        return Symbolizer::sax;
    }
    if (name == "1dsax" || name == "onedsax") {
        return Symbolizer::onedsax;
    }
    return std::nullopt;
}

struct TarzanSetup {
    Symbolizer method = Symbolizer::abba;
    std::size_t window = 3;       // TARZAN substring length
    std::size_t segment_len = 5;  // SAX / 1d-SAX segment length
    std::size_t k = 9;            // alphabet bound for every method
    /// ABBA tolerance; when unset it is tuned so that the test string is as
    /// long as the SAX string of the same series.
    std::optional<double> tol;
    double s = 0.2;
};

struct SymbolicPair {
    std::string ref;
    std::string test;
    std::vector<std::size_t> test_lengths; // samples covered per test symbol
    double tol = 0.0;                      // ABBA only
};

/// Symbolizes z-normalized reference and test series with a shared
/// alphabet. ABBA clusters the pieces of both series together.
inline SymbolicPair symbolize_pair(std::span<const double> ref, std::span<const double> test,
                                   const TarzanSetup& setup) {
    SymbolicPair out;
    switch (setup.method) {
    case Symbolizer::sax: {
        const SaxConfig c{setup.segment_len, setup.k};
        out.ref = sax_symbolize(ref, c);
        out.test = sax_symbolize(test, c);
        out.test_lengths.assign(out.test.size(), setup.segment_len);
        return out;
    }
    case Symbolizer::onedsax: {
        OneDSaxConfig c;
        c.segment_len = setup.segment_len;
        const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(setup.k))));
        require(side * side == setup.k, "1d-SAX needs a square alphabet size");
        c.k_mean = side;
        c.k_slope = side;
        out.ref = onedsax_symbolize(ref, c);
        out.test = onedsax_symbolize(test, c);
        out.test_lengths.assign(out.test.size(), setup.segment_len);
        return out;
    }
    case Symbolizer::abba: break;
    }
    require(setup.segment_len >= 1, "segment length must be at least 1");
    out.tol = setup.tol ? *setup.tol : tolerance_for_length(test, test.size() / setup.segment_len);
    const std::vector<PieceSequence> chains{compress(ref, {out.tol, unbounded}),
                                            compress(test, {out.tol, unbounded})};
    DigitizationConfig dc;
    dc.max_k = setup.k;
    dc.s = setup.s;
    const auto symbolic = digitize_joint(chains, dc, out.tol);
    out.ref = symbolic[0].symbols;
    out.test = symbolic[1].symbols;
    out.test_lengths = symbol_time_lengths(symbolic[1]);
    return out;
}

/// TARZAN with the adapted score on symbolized series.
inline AnomalyScores symbolic_tarzan(std::span<const double> ref, std::span<const double> test,
                                     const TarzanSetup& setup) {
    const auto pair = symbolize_pair(ref, test, setup);
    return tarzan_scores(pair.ref, pair.test, setup.window, pair.test_lengths);
}

} // namespace abba
