// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "abba/abba.hpp"
#include "oracles.hpp"

using namespace abba;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %2d %-28s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

const std::vector<double> tolerances{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};

// Criteria 1 and 2 share one corpus.
void compression_checks() {
    synthetic::Rng rng(1001);
    Stopwatch clock;
    std::size_t bound_violations = 0;
    std::size_t greedy_violations = 0;
    std::size_t pieces_checked = 0;
    double worst = 0.0;
    double compress_seconds = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto s = synthetic::random_series(rng, 100, 2000);
        const double tol = tolerances[static_cast<std::size_t>(rng.integer(0, 9))];
        Stopwatch c;
        const auto seq = compress(s, {tol, unbounded});
        compress_seconds += c.seconds();

        const auto chain = stitch(seq);
        const double e = euclid(s, chain);
        const double limit = static_cast<double>(seq.original_length - seq.size()) * tol * tol;
        worst = std::max(worst, limit > 0 ? e * e / limit : e * e);
        if (e * e > limit * (1.0 + 1e-12) + 1e-24) {
            ++bound_violations;
        }

        std::size_t start = 0;
        for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
            const std::size_t len = seq.pieces[j].len;
            const long double ext = oracle::chord_error(s, start, start + len + 1);
            const long double budget = static_cast<long double>(len) * tol * tol;
            if (ext <= budget * (1.0L - 1e-12L)) {
                ++greedy_violations;
            }
            ++pieces_checked;
            start += len;
        }
    }
    report(1, "compression bound", bound_violations == 0 && compress_seconds < 10.0,
           fmt("1000 series, %zu violations, max err^2/bound %.4f, compress %.2fs", bound_violations, worst,
               compress_seconds));
    report(2, "greedy maximality", greedy_violations == 0,
           fmt("%zu closed pieces, %zu extendable (%.1fs)", pieces_checked, greedy_violations, clock.seconds()));
}

void clustering_oracle() {
    synthetic::Rng rng(1003);
    std::size_t cases = 0;
    std::size_t mismatches = 0;
    while (cases < 12000) {
        const auto n = static_cast<std::size_t>(rng.integer(1, 10));
        std::vector<std::int64_t> ints(n);
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; ++i) {
            ints[i] = rng.integer(-8, 8);
            values[i] = static_cast<double>(ints[i]);
        }
        for (std::size_t k = 1; k <= std::min<std::size_t>(4, n); ++k) {
            const auto c = cluster_1d(values, 0.0, k, k);
            if (c.k != k || oracle::labelled_wcss(ints, c.labels, k) != oracle::best_contiguous_wcss(ints, k)) {
                ++mismatches;
            }
            ++cases;
        }
    }
    report(3, "optimal 1-D clustering", mismatches == 0, fmt("%zu cases, %zu mismatches", cases, mismatches));
}

long double oracle_max_variance(const std::vector<double>& values, const std::vector<std::size_t>& labels,
                                std::size_t k) {
    std::vector<long double> sum(k, 0.0L);
    std::vector<std::size_t> cnt(k, 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        sum[labels[i]] += values[i];
        ++cnt[labels[i]];
    }
    std::vector<long double> sq(k, 0.0L);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const long double d = values[i] - sum[labels[i]] / static_cast<long double>(cnt[labels[i]]);
        sq[labels[i]] += d * d;
    }
    long double worst = 0.0L;
    for (std::size_t c = 0; c < k; ++c) {
        if (cnt[c] > 0) {
            worst = std::max(worst, sq[c] / static_cast<long double>(cnt[c]));
        }
    }
    return worst;
}

void variance_criterion() {
    synthetic::Rng rng(1004);
    std::size_t checked = 0;
    std::size_t above = 0;
    std::size_t not_minimal = 0;
    for (int i = 0; i < 500; ++i) {
        const auto z = normalize(synthetic::random_series(rng, 100, 2000)).values;
        const double tol = tolerances[static_cast<std::size_t>(rng.integer(0, 9))];
        const auto seq = compress(z, {tol, unbounded});
        const auto sym = digitize(seq, {}, tol);
        const auto& m = sym.model;
        if (m.k >= alphabet_size()) {
            continue;
        }
        ++checked;
        std::vector<double> incs;
        for (const auto& p : seq.pieces) {
            incs.push_back(p.inc);
        }
        const long double limit = static_cast<long double>(m.tol_s) * m.tol_s;
        if (oracle_max_variance(incs, m.assignments, m.k) > limit * (1.0L + 1e-12L)) {
            ++above;
        }
        if (m.k >= 2) {
            const auto fewer = cluster_1d(incs, 0.0, m.k - 1, m.k - 1);
            if (oracle_max_variance(incs, fewer.labels, fewer.k) <= limit) {
                ++not_minimal;
            }
        }
    }
    report(4, "variance criterion", above == 0 && not_minimal == 0 && checked > 0,
           fmt("%zu series with k < 62, %zu above tol_s^2, %zu with admissible k-1", checked, above, not_minimal));
}

void endpoint_pinning() {
    synthetic::Rng rng(1005);
    Stopwatch clock;
    std::size_t runs = 0;
    std::size_t bad_end = 0;
    std::size_t bad_len = 0;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto z = normalize(synthetic::random_series(rng, 100, 2000)).values;
        const double tol = tolerances[static_cast<std::size_t>(rng.integer(0, 9))];
        const auto seq = compress(z, {tol, unbounded});
        for (double scl : {0.0, 1.0, scl_infinity}) {
            DigitizationConfig dc;
            dc.scl = scl;
            dc.seed = static_cast<std::uint64_t>(i);
            const auto sym = digitize(seq, dc, tol);
            const auto q = quantize(inverse_digitize(sym), sym.start_value);
            std::size_t total = 0;
            for (const auto& p : q.pieces) {
                total += p.len;
            }
            ++runs;
            if (total != seq.original_length) {
                ++bad_len;
                continue;
            }
            const auto rec = inverse_compress(q);
            const double n = static_cast<double>(seq.original_length);
            const double gap = std::abs(rec.back() - z.back());
            worst = std::max(worst, gap / n);
            if (gap > 1e-9 * n) {
                ++bad_end;
            }
        }
    }
    report(5, "endpoint pinning", bad_end == 0 && bad_len == 0,
           fmt("%zu runs, %zu length mismatches, %zu end gaps, max gap/N %.2e (%.1fs)", runs, bad_len, bad_end, worst,
               clock.seconds()));
}

// Pooled variance of e_{n/2} / tol_s relative to the bridge value n/4.
struct BridgeStat {
    double sum_sq = 0.0;
    double sum = 0.0;
    std::size_t runs = 0;

    void add(const PieceSequence& seq, const SymbolicSeries& sym) {
        const auto e = breakpoint_errors(seq, sym);
        const std::size_t n = seq.size();
        const std::size_t j = n / 2;
        const double expected = static_cast<double>(j) * static_cast<double>(n - j) / static_cast<double>(n);
        const double u = e[j] / sym.model.tol_s / std::sqrt(expected);
        sum += u;
        sum_sq += u * u;
        ++runs;
    }

    double ratio() const {
        const double mean = sum / static_cast<double>(runs);
        return sum_sq / static_cast<double>(runs) - mean * mean;
    }
};

// Series built from n pieces whose increments alternate in sign around
// a few well separated levels and jitter uniformly inside each level with
// variance close to tol_s^2. Compression recovers the pieces exactly, so
// the clusters sit at the edge of the variance criterion.
Series bridge_series(synthetic::Rng& rng, double tol, double s) {
    const auto n = static_cast<std::size_t>(rng.integer(50, 200));
    std::vector<std::size_t> lens(n);
    std::size_t total = 0;
    for (auto& l : lens) {
        l = static_cast<std::size_t>(rng.integer(5, 15));
        total += l;
    }
    const double tol_s = compute_tol_s(tol, total, n, s);
    const double half_width = std::sqrt(2.4) * tol_s;
    Series out;
    double v = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        const double sign = p % 2 == 0 ? -1.0 : 1.0;
        const double inc = sign * (40.0 * tol_s * static_cast<double>(rng.integer(1, 3)) +
                                   rng.uniform(-half_width, half_width));
        for (std::size_t x = 0; x < lens[p]; ++x) {
            out.push_back(v + inc * static_cast<double>(x) / static_cast<double>(lens[p]));
        }
        v += inc;
    }
    out.push_back(v);
    return out;
}

void bridge_variance() {
    const double tol = 0.01;
    synthetic::Rng rng(1006);
    BridgeStat stat;
    std::size_t rejected = 0;
    while (stat.runs < 500) {
        const auto s = bridge_series(rng, tol, 0.2);
        const auto seq = compress(s, {tol, unbounded});
        if (seq.size() < 50) {
            ++rejected;
            continue;
        }
        stat.add(seq, digitize(seq, {}, tol));
    }
    const double r = stat.ratio();
    report(6, "bridge variance", r >= 0.5 && r <= 2.0,
           fmt("500 series, Var(e_{n/2}/tol_s) / (n/4) = %.3f, %zu short chains skipped", r, rejected));

    // Random walks for comparison; only the largest cluster variance is
    // held to tol_s^2, so the typical one is well below it.
    synthetic::Rng walk_rng(1016);
    BridgeStat walks;
    while (walks.runs < 500) {
        const auto z = normalize(synthetic::random_walk(walk_rng, 1500)).values;
        const auto seq = compress(z, {0.1, unbounded});
        if (seq.size() < 50) {
            continue;
        }
        walks.add(seq, digitize(seq, {}, 0.1));
    }
    std::printf("       info: normalized random walks, same statistic = %.3f\n", walks.ratio());
}

void dtw_oracle() {
    synthetic::Rng rng(1007);
    std::size_t bad = 0;
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const auto a = synthetic::white_noise(rng, static_cast<std::size_t>(rng.integer(1, 6)));
        const auto b = synthetic::white_noise(rng, static_cast<std::size_t>(rng.integer(1, 6)));
        const double d = std::abs(dtw(a, b) - oracle::dtw_paths(a, b));
        worst = std::max(worst, d);
        bad += d > 1e-12;
    }
    report(7, "DTW oracle", bad == 0, fmt("2000 pairs, %zu mismatches, max |diff| %.1e", bad, worst));
}

void profile_direction() {
    Stopwatch clock;
    const auto corpus = ingest(std::string(ABBA_MINI_CORPUS), InputFormat::tsv);
    const auto m = run_comparison(corpus);
    std::size_t included = 0;
    std::size_t abba_best = 0;
    std::size_t sax_beats = 0;
    for (const auto* r : m.included()) {
        ++included;
        const double a = r->error(Algorithm::abba, DistanceKind::dtw_diff);
        abba_best += a <= r->error(Algorithm::sax, DistanceKind::dtw_diff) &&
                     a <= r->error(Algorithm::onedsax, DistanceKind::dtw_diff);
        sax_beats += r->error(Algorithm::sax, DistanceKind::euclid) < r->error(Algorithm::onedsax, DistanceKind::euclid);
    }
    const double secs = clock.seconds();
    const bool ok = included > 0 && 10 * abba_best >= 6 * included && 2 * sax_beats >= included && secs < 60.0;
    report(8, "profile direction", ok,
           fmt("%zu included, ABBA best dtw_diff %zu, SAX < 1d-SAX euclid %zu (%.1fs)", included, abba_best, sax_beats,
               secs));
}

void heat_proxy() {
    synthetic::Rng rng(1009);
    const auto z = normalize(synthetic::plant_temperature(rng, 7128)).values;
    const double tol = 0.1;
    const auto seq = compress(z, {tol, unbounded});
    const auto sym = digitize(seq, {}, tol);
    const double bound = compression_error_bound(seq.original_length, seq.size(), tol);
    const double e_chain = euclid(z, stitch(seq));
    const double e_rec = dtw(z, reconstruct(sym));
    report(9, "heat-exchanger proxy", e_chain <= bound && e_rec <= 3.0 * bound,
           fmt("N=%zu n=%zu k=%zu, euclid(chain) %.2f, dtw(rec) %.2f, bound %.2f", seq.original_length, seq.size(),
               sym.model.k, e_chain, e_rec, bound));
}

void tarzan_toy() {
    const std::size_t period = 25;
    const std::size_t periods = 12;
    const std::size_t anomaly_at = 5 * period;
    const std::size_t flat = 22;
    const auto ref_raw = synthetic::sine(periods * period, static_cast<double>(period));
    Series test_raw(ref_raw.begin(), ref_raw.begin() + static_cast<std::ptrdiff_t>(anomaly_at));
    test_raw.insert(test_raw.end(), flat, 0.0);
    test_raw.insert(test_raw.end(), ref_raw.begin() + static_cast<std::ptrdiff_t>(anomaly_at + period), ref_raw.end());
    const auto ref = normalize(ref_raw).values;
    const auto test = normalize(test_raw).values;
    const std::size_t after = anomaly_at + flat;
    const double threshold = 0.5;

    const auto post = [&](Symbolizer method) {
        TarzanSetup setup;
        setup.method = method;
        const auto scores = symbolic_tarzan(ref, test, setup).sample_scores;
        std::size_t c = 0;
        for (std::size_t i = after; i < scores.size(); ++i) {
            c += std::abs(scores[i]) > threshold;
        }
        return c;
    };
    const auto a = post(Symbolizer::abba);
    const auto s = post(Symbolizer::sax);
    const auto o = post(Symbolizer::onedsax);
    report(10, "TARZAN recovery", a < s,
           fmt("samples after the anomaly with |score| > %.1f: ABBA %zu, SAX %zu, 1d-SAX %zu", threshold, a, s, o));
}

void breakpoint_goldens() {
    double worst = 0.0;
    for (std::size_t k = 2; k <= 20; ++k) {
        const auto b = gaussian_breakpoints(k);
        for (std::size_t i = 1; i < k; ++i) {
            worst = std::max(worst, std::abs(b[i - 1] - oracle::normal_quantile(static_cast<double>(i) /
                                                                                  static_cast<double>(k))));
        }
    }
    report(11, "Gaussian breakpoints", worst <= 1e-6, fmt("k = 2..20, max |diff| %.1e", worst));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void determinism() {
    const auto dir = fs::temp_directory_path() / fmt("abba_acceptance_%lld", static_cast<long long>(
                                                         std::chrono::steady_clock::now().time_since_epoch().count()));
    fs::create_directories(dir);
    bool ran = true;
    for (const char* run : {"a", "b"}) {
        const auto matrix = dir / fmt("matrix_%s.csv", run);
        const auto profile = dir / fmt("profile_%s.csv", run);
        const std::string cmp = std::string("\"") + ABBA_CLI + "\" compare \"" + ABBA_MINI_CORPUS + "\" --seed 5 -o \"" +
                                matrix.string() + "\"";
        const std::string prof = std::string("\"") + ABBA_CLI + "\" profile \"" + matrix.string() + "\" -o \"" +
                                 profile.string() + "\"";
        ran = ran && std::system(cmp.c_str()) == 0 && std::system(prof.c_str()) == 0;
    }
    const bool same_matrix = ran && slurp(dir / "matrix_a.csv") == slurp(dir / "matrix_b.csv");
    const bool same_profile = ran && slurp(dir / "profile_a.csv") == slurp(dir / "profile_b.csv");
    const auto bytes = ran ? fs::file_size(dir / "matrix_a.csv") + fs::file_size(dir / "profile_a.csv") : 0;
    fs::remove_all(dir);
    report(12, "determinism", ran && same_matrix && same_profile,
           fmt("compare + profile twice: matrix %s, profile %s (%ju bytes)", same_matrix ? "identical" : "differs",
               same_profile ? "identical" : "differs", static_cast<std::uintmax_t>(bytes)));
}

} // namespace

int main() {
    compression_checks();
    clustering_oracle();
    variance_criterion();
    endpoint_pinning();
    bridge_variance();
    dtw_oracle();
    profile_direction();
    heat_proxy();
    tarzan_toy();
    breakpoint_goldens();
    determinism();
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
