// Command-line front end: symbolize, reconstruct, compare, profile, tarzan.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "abba/abba.hpp"
#include "abba/model_json.hpp"

namespace {

constexpr int exit_usage = 1;
constexpr int exit_data = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_scl(const std::string& text) {
    if (text == "inf" || text == "infinity") {
        return abba::scl_infinity;
    }
    const auto v = abba::detail::parse_number(text);
    if (!v || *v < 0.0 || std::isnan(*v)) {
        throw UsageError("--scl must be a non-negative number or 'inf'");
    }
    return *v;
}

abba::InputFormat parse_format(const std::string& text) {
    const auto f = abba::parse_input_format(text);
    if (!f) {
        throw UsageError("--format must be csv or tsv");
    }
    return *f;
}

// Writes to the named file, or stdout for "" / "-".
template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw abba::IngestError("cannot write '" + path + "'", 0);
    }
    fn(out);
}

const abba::LabeledSeries& pick(const std::vector<abba::LabeledSeries>& all, std::size_t index) {
    if (index >= all.size()) {
        throw abba::IngestError("series index " + std::to_string(index) + " out of range", 0);
    }
    return all[index];
}

void write_series(std::ostream& out, const abba::Series& s) {
    for (double v : s) {
        out << abba::format_number(v) << '\n';
    }
}

struct SymbolizeArgs {
    std::string input;
    std::string format = "csv";
    std::size_t index = 0;
    std::string model;
    double tol = 0.1;
    std::string scl = "0";
    double s = 0.2;
    std::size_t min_k = 1;
    std::size_t max_k = abba::alphabet_size();
    std::size_t max_len = 0;
    std::uint64_t seed = 0;
    bool raw = false;
};

void run_symbolize(const SymbolizeArgs& a) {
    const auto all = abba::ingest(a.input, parse_format(a.format));
    const auto& item = pick(all, a.index);
    abba::validate_series(item.values);

    abba::Series values = item.values;
    std::optional<abba::ValueScaling> scaling;
    if (!a.raw) {
        const auto norm = abba::normalize(item.values);
        values = norm.values;
        scaling = abba::ValueScaling{norm.mean, norm.std};
    }
    const auto pieces = abba::compress(values, {a.tol, a.max_len == 0 ? abba::unbounded : a.max_len});
    abba::DigitizationConfig dc;
    dc.scl = parse_scl(a.scl);
    dc.s = a.s;
    dc.min_k = a.min_k;
    dc.max_k = a.max_k;
    dc.seed = a.seed;
    const auto symbolic = abba::digitize(pieces, dc, a.tol);
    std::cout << symbolic.symbols << '\n';
    if (!a.model.empty()) {
        with_output(a.model, [&](std::ostream& out) { out << abba::to_json(symbolic, scaling).dump(2) << '\n'; });
    }
}

struct ReconstructArgs {
    std::string model;
    std::string symbols;
    std::string output;
    bool raw = false;
};

void run_reconstruct(const ReconstructArgs& a) {
    std::ifstream in(a.model);
    if (!in) {
        throw abba::IngestError("cannot open '" + a.model + "'", 0);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw abba::InvalidInput(std::string("model is not valid JSON: ") + e.what());
    }
    auto loaded = abba::symbolic_from_json(j);
    if (!a.symbols.empty()) {
        loaded.series.symbols = a.symbols;
    }
    auto series = abba::reconstruct(loaded.series);
    if (loaded.scaling && !a.raw) {
        abba::Normalized n;
        n.mean = loaded.scaling->mean;
        n.std = loaded.scaling->std;
        series = n.denormalize(series);
    }
    with_output(a.output, [&](std::ostream& out) { write_series(out, series); });
}

struct CompareArgs {
    std::string input;
    std::string format = "tsv";
    std::string output;
    std::string scl = "0";
    double s = 0.2;
    std::size_t k = 9;
    std::uint64_t seed = 0;
};

void run_compare(const CompareArgs& a) {
    const auto corpus = abba::ingest(a.input, parse_format(a.format));
    abba::ExperimentConfig cfg;
    cfg.scl = parse_scl(a.scl);
    cfg.s = a.s;
    cfg.k = a.k;
    cfg.seed = a.seed;
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(a.k))));
    if (side * side != a.k) {
        throw UsageError("--k must be a perfect square so that 1d-SAX can split it");
    }
    cfg.onedsax_k_mean = side;
    cfg.onedsax_k_slope = side;
    const auto matrix = abba::run_comparison(corpus, cfg);
    with_output(a.output, [&](std::ostream& out) { abba::write_matrix_csv(out, matrix); });
}

struct ProfileArgs {
    std::string input;
    std::string distance = "dtw_diff";
    std::string output;
};

void run_profile(const ProfileArgs& a) {
    const auto kind = abba::parse_distance_kind(a.distance);
    if (!kind) {
        throw UsageError("--distance must be one of euclid, dtw, euclid_diff, dtw_diff");
    }
    std::ifstream in(a.input);
    if (!in) {
        throw abba::IngestError("cannot open '" + a.input + "'", 0);
    }
    const auto matrix = abba::read_matrix_csv(in);
    const auto curves = abba::performance_profile(matrix, *kind);
    with_output(a.output, [&](std::ostream& out) { abba::write_profile_csv(out, curves); });
}

struct TarzanArgs {
    std::string ref;
    std::string test;
    std::string format = "csv";
    std::string method = "abba";
    std::size_t window = 3;
    std::size_t w = 5;
    std::size_t k = 9;
    std::optional<double> tol;
    double s = 0.2;
    double threshold = 0.5;
    std::string output;
    std::string intervals;
};

void run_tarzan(const TarzanArgs& a) {
    const auto method = abba::parse_symbolizer(a.method);
    if (!method) {
        throw UsageError("--method must be abba, sax or 1dsax");
    }
    const auto fmt = parse_format(a.format);
    const auto ref = abba::normalize(pick(abba::ingest(a.ref, fmt), 0).values).values;
    const auto test = abba::normalize(pick(abba::ingest(a.test, fmt), 0).values).values;
    abba::TarzanSetup setup;
    setup.method = *method;
    setup.window = a.window;
    setup.segment_len = a.w;
    setup.k = a.k;
    setup.tol = a.tol;
    setup.s = a.s;
    const auto scores = abba::symbolic_tarzan(ref, test, setup);
    with_output(a.output, [&](std::ostream& out) {
        out << "index,score\n";
        for (std::size_t i = 0; i < scores.sample_scores.size(); ++i) {
            out << i << ',' << abba::format_number(scores.sample_scores[i]) << '\n';
        }
    });
    const auto runs = abba::exceedance_intervals(scores.sample_scores, a.threshold);
    const auto emit = [&](std::ostream& out) {
        out << "begin,end\n";
        for (const auto& [b, e] : runs) {
            out << b << ',' << e << '\n';
        }
    };
    if (a.intervals.empty()) {
        emit(std::cerr);
    } else {
        with_output(a.intervals, emit);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive Brownian bridge-based symbolic aggregation of time series"};
    app.require_subcommand(1);

    SymbolizeArgs sym;
    auto* c_sym = app.add_subcommand("symbolize", "Series -> symbol string (stdout) + model sidecar");
    c_sym->add_option("--input,input", sym.input, "Series file")->required();
    c_sym->add_option("--format", sym.format, "csv (one value per line) or tsv (UCR rows)");
    c_sym->add_option("--index", sym.index, "Row to use from a tsv file");
    c_sym->add_option("--model,-o", sym.model, "Where to write the JSON sidecar");
    c_sym->add_option("--tol", sym.tol, "Compression tolerance")->check(CLI::PositiveNumber);
    c_sym->add_option("--scl", sym.scl, "Length weight: number >= 0 or inf");
    c_sym->add_option("--s", sym.s, "Standard-deviation multiplier")->check(CLI::PositiveNumber);
    c_sym->add_option("--min-k", sym.min_k, "Smallest number of symbols")->check(CLI::PositiveNumber);
    c_sym->add_option("--max-k", sym.max_k, "Largest number of symbols")->check(CLI::PositiveNumber);
    c_sym->add_option("--max-len", sym.max_len, "Longest piece (0 = unbounded)");
    c_sym->add_option("--seed", sym.seed, "Seed for 2-D clustering");
    c_sym->add_flag("--raw", sym.raw, "Do not z-normalize the input");

    ReconstructArgs rec;
    auto* c_rec = app.add_subcommand("reconstruct", "Symbols + sidecar -> series CSV");
    c_rec->add_option("--model,model", rec.model, "JSON sidecar")->required();
    c_rec->add_option("--symbols", rec.symbols, "Symbol string (default: the one in the sidecar)");
    c_rec->add_option("--output,-o", rec.output, "Output CSV (default stdout)");
    c_rec->add_flag("--raw", rec.raw, "Stay in normalized units");

    CompareArgs cmp;
    auto* c_cmp = app.add_subcommand("compare", "Corpus -> ABBA / SAX / 1d-SAX error matrix CSV");
    c_cmp->add_option("--input,input", cmp.input, "Corpus file")->required();
    c_cmp->add_option("--format", cmp.format, "tsv (UCR rows) or csv (single series)");
    c_cmp->add_option("--output,-o", cmp.output, "Output CSV (default stdout)");
    c_cmp->add_option("--scl", cmp.scl, "ABBA length weight: number >= 0 or inf");
    c_cmp->add_option("--s", cmp.s, "Standard-deviation multiplier")->check(CLI::PositiveNumber);
    c_cmp->add_option("--k", cmp.k, "Symbols per method")->check(CLI::PositiveNumber);
    c_cmp->add_option("--seed", cmp.seed, "Seed for 2-D clustering");

    ProfileArgs prof;
    auto* c_prof = app.add_subcommand("profile", "Error matrix -> performance profile CSV");
    c_prof->add_option("--input,input", prof.input, "Error matrix CSV from compare")->required();
    c_prof->add_option("--distance", prof.distance, "euclid, dtw, euclid_diff or dtw_diff");
    c_prof->add_option("--output,-o", prof.output, "Output CSV (default stdout)");

    TarzanArgs tz;
    double tz_tol = 0.0;
    auto* c_tz = app.add_subcommand("tarzan", "Reference + test series -> per-sample anomaly scores");
    c_tz->add_option("--ref", tz.ref, "Reference series")->required();
    c_tz->add_option("--test", tz.test, "Test series")->required();
    c_tz->add_option("--format", tz.format, "csv or tsv (first row is used)");
    c_tz->add_option("--method", tz.method, "abba, sax or 1dsax");
    c_tz->add_option("--window", tz.window, "Substring length")->check(CLI::PositiveNumber);
    c_tz->add_option("--w", tz.w, "SAX segment length")->check(CLI::PositiveNumber);
    c_tz->add_option("--k", tz.k, "Symbols")->check(CLI::PositiveNumber);
    auto* tol_opt = c_tz->add_option("--tol", tz_tol, "ABBA tolerance (default: match SAX length)")
                        ->check(CLI::PositiveNumber);
    c_tz->add_option("--s", tz.s, "Standard-deviation multiplier")->check(CLI::PositiveNumber);
    c_tz->add_option("--threshold", tz.threshold, "Flag samples with |score| above this");
    c_tz->add_option("--output,-o", tz.output, "Score CSV (default stdout)");
    c_tz->add_option("--intervals", tz.intervals, "Exceedance interval CSV (default stderr)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (*c_sym) {
            run_symbolize(sym);
        } else if (*c_rec) {
            run_reconstruct(rec);
        } else if (*c_cmp) {
            run_compare(cmp);
        } else if (*c_prof) {
            run_profile(prof);
        } else if (*c_tz) {
            if (*tol_opt) {
                tz.tol = tz_tol;
            }
            run_tarzan(tz);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    }
    return 0;
}
