#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "abba/alphabet.hpp"
#include "abba/compression.hpp"
#include "abba/digitization.hpp"
#include "abba/error.hpp"
#include "abba/preprocessing.hpp"

namespace abba {

/// A cluster center standing in for a piece; the length need not be integral.
struct RealPiece {
    double len = 0.0;
    double inc = 0.0;
};

/// Pieces with integer lengths summing to original_length.
struct QuantizedPieces {
    double start_value = 0.0;
    std::vector<Piece> pieces;
};

/// Rounding used throughout quantization: half away from zero.
inline std::int64_t round_length(double x) { return static_cast<std::int64_t>(std::llround(x)); }

/// Replaces each symbol by its cluster center.
inline std::vector<RealPiece> inverse_digitize(const SymbolicSeries& symbolic) {
    const auto& model = symbolic.model;
    require(model.centers.size() == model.k, "model has inconsistent center count");
    std::vector<RealPiece> out;
    out.reserve(symbolic.symbols.size());
    for (char c : symbolic.symbols) {
        const auto idx = index_of(c);
        if (idx >= model.k) {
            throw InvalidInput(std::string("symbol '") + c + "' has no cluster");
        }
        out.push_back({model.centers[idx][0], model.centers[idx][1]});
    }
    return out;
}

/// Carry rounding of cumulated lengths: each length plus the error carried
/// from its predecessor is rounded and the new error is carried on. The sum
/// of the output equals the rounded sum of the input; entries may be zero
/// or negative when centers are shorter than half a step.
inline std::vector<std::int64_t> carry_round(std::span<const double> lengths) {
    std::vector<std::int64_t> out;
    out.reserve(lengths.size());
    double carry = 0.0;
    for (double len : lengths) {
        const double target = len + carry;
        const auto r = round_length(target);
        carry = target - static_cast<double>(r);
        out.push_back(r);
    }
    return out;
}

/// Carry rounding with every emitted length at least 1. A piece that would
/// round below 1 is clamped to 1 and the surplus is carried into the next
/// piece. If the surplus reaches the end of the chain, the trailing piece is
/// merged into its predecessor (increments add up) and any remaining
/// surplus is taken from the nearest preceding piece longer than 1, merging
/// further pieces while none is. The lengths keep summing to round(sum).
inline QuantizedPieces quantize(std::span<const RealPiece> pieces, double start_value) {
    QuantizedPieces out;
    out.start_value = start_value;
    if (pieces.empty()) {
        return out;
    }
    std::vector<std::int64_t> lens;
    std::vector<double> incs;
    lens.reserve(pieces.size());
    incs.reserve(pieces.size());
    double carry = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const double target = pieces[i].len + carry;
        auto r = round_length(target);
        const bool last = i + 1 == pieces.size();
        if (r < 1 && !(last && !lens.empty())) {
            r = 1;
        }
        carry = target - static_cast<double>(r);
        lens.push_back(r);
        incs.push_back(pieces[i].inc);
    }

    // Only the final piece can still be below 1 here.
    std::int64_t surplus = 0;
    if (lens.back() < 1) {
        surplus = -lens.back();
        const double inc = incs.back();
        lens.pop_back();
        incs.pop_back();
        incs.back() += inc;
    }
    for (std::size_t j = lens.size(); surplus > 0 && j-- > 0;) {
        const auto take = std::min(surplus, lens[j] - 1);
        lens[j] -= take;
        surplus -= take;
        if (surplus > 0 && j > 0) {
            // Piece j is down to length 1; drop it into j - 1.
            incs[j - 1] += incs[j];
            lens.erase(lens.begin() + static_cast<std::ptrdiff_t>(j));
            incs.erase(incs.begin() + static_cast<std::ptrdiff_t>(j));
            surplus -= 1;
        }
    }

    out.pieces.reserve(lens.size());
    for (std::size_t i = 0; i < lens.size(); ++i) {
        out.pieces.push_back({static_cast<std::size_t>(lens[i]), incs[i]});
    }
    return out;
}

/// Lengths-only view of quantize().
inline std::vector<std::size_t> quantize_lengths(std::span<const double> lengths) {
    std::vector<RealPiece> pieces;
    pieces.reserve(lengths.size());
    for (double l : lengths) {
        pieces.push_back({l, 0.0});
    }
    std::vector<std::size_t> out;
    for (const auto& p : quantize(pieces, 0.0).pieces) {
        out.push_back(p.len);
    }
    return out;
}

/// Stitches the quantized pieces into a pointwise series of length
/// sum(len) + 1 by linear interpolation across each piece.
inline Series inverse_compress(const QuantizedPieces& q) {
    PieceSequence seq;
    seq.start_value = q.start_value;
    seq.pieces = q.pieces;
    for (const auto& p : q.pieces) {
        seq.original_length += p.len;
    }
    return stitch(seq);
}

/// Inverse digitization, quantization and stitching.
inline Series reconstruct(const SymbolicSeries& symbolic) {
    const auto centers = inverse_digitize(symbolic);
    if (centers.empty()) {
        return Series{symbolic.start_value};
    }
    const auto q = quantize(centers, symbolic.start_value);
    std::size_t total = 0;
    for (const auto& p : q.pieces) {
        total += p.len;
    }
    if (total != symbolic.original_length) {
        throw InvalidInput("cluster lengths do not add up to the original length");
    }
    return inverse_compress(q);
}

/// Number of time samples each symbol covers on the original grid of
/// original_length + 1 samples: center lengths rescaled to add up to
/// original_length (they already do unless the model was fitted jointly
/// with other series), carry-rounded, with the final sample given to the
/// last symbol. Entries can be 0 for very short centers.
inline std::vector<std::size_t> symbol_time_lengths(const SymbolicSeries& symbolic) {
    const auto centers = inverse_digitize(symbolic);
    std::vector<std::size_t> out(centers.size(), 0);
    if (centers.empty()) {
        return out;
    }
    double total = 0.0;
    for (const auto& c : centers) {
        total += c.len;
    }
    require(total > 0.0, "cluster lengths must be positive");
    const double scale = static_cast<double>(symbolic.original_length) / total;
    std::vector<double> lens(centers.size());
    for (std::size_t i = 0; i < centers.size(); ++i) {
        lens[i] = centers[i].len * scale;
    }
    const auto rounded = carry_round(lens);
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < rounded.size(); ++i) {
        const auto r = std::max<std::int64_t>(rounded[i], 0);
        out[i] = static_cast<std::size_t>(r);
        assigned += r;
    }
    const auto target = static_cast<std::int64_t>(symbolic.original_length);
    if (assigned != target) {
        const auto fix = static_cast<std::int64_t>(out.back()) + target - assigned;
        out.back() = static_cast<std::size_t>(std::max<std::int64_t>(fix, 0));
    }
    out.back() += 1;
    return out;
}

/// Accumulated increment errors e_j = sum_{l <= j} (center_inc(s_l) - inc_l)
/// at the breakpoints j = 0..n. e_0 is 0 and e_n vanishes up to rounding
/// because every center is the mean of its members.
inline std::vector<double> breakpoint_errors(const PieceSequence& seq, const SymbolicSeries& symbolic) {
    require(seq.pieces.size() == symbolic.symbols.size(), "chain and symbols differ in length");
    const auto centers = inverse_digitize(symbolic);
    std::vector<double> e;
    e.reserve(seq.pieces.size() + 1);
    e.push_back(0.0);
    double acc = 0.0;
    for (std::size_t j = 0; j < seq.pieces.size(); ++j) {
        acc += centers[j].inc - seq.pieces[j].inc;
        e.push_back(acc);
    }
    return e;
}

} // namespace abba
