#pragma once

#include <cstddef>
#include <string_view>

#include "abba/error.hpp"

namespace abba {

// Symbol i is alphabet()[i]; 'a' is index 0.
inline constexpr std::string_view alphabet() {
    return "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
}

inline constexpr std::size_t alphabet_size() { return alphabet().size(); }

inline char symbol_for(std::size_t index) {
    if (index >= alphabet_size()) {
        throw InvalidInput("symbol index exceeds alphabet size");
    }
    return alphabet()[index];
}

inline std::size_t index_of(char symbol) {
    const auto pos = alphabet().find(symbol);
    if (pos == std::string_view::npos) {
        throw InvalidInput(std::string("unknown symbol '") + symbol + "'");
    }
    return pos;
}

} // namespace abba
