// Symbolizes a noisy sine and prints the string, the alphabet size and the
// reconstruction error.
#include <cstdio>

#include "abba/abba.hpp"

int main() {
    abba::synthetic::Rng rng(1);
    auto series = abba::synthetic::sine(400, 60.0);
    abba::synthetic::add_noise(rng, series, 0.05);

    const auto norm = abba::normalize(series);
    const double tol = 0.1;
    const auto pieces = abba::compress(norm.values, {tol, abba::unbounded});
    const auto symbolic = abba::digitize(pieces, {}, tol);
    const auto rebuilt = abba::reconstruct(symbolic);

    std::printf("%s\n", symbolic.symbols.c_str());
    std::printf("pieces: %zu  symbols: %zu\n", pieces.size(), symbolic.model.k);
    std::printf("euclid(chain) = %.4f  (bound %.4f)\n", abba::euclid(norm.values, abba::stitch(pieces)),
                abba::compression_error_bound(norm.values.size() - 1, pieces.size(), tol));
    std::printf("dtw(reconstruction) = %.4f\n", abba::dtw(norm.values, rebuilt));
}
