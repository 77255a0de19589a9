#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "abba/abba.hpp"
#include "abba/model_json.hpp"

using namespace abba;

TEST(Ingest, CsvSingleColumn) {
    std::istringstream in("1.5\n\n 2\n-3e1\r\n");
    const auto s = ingest(in, InputFormat::csv, "x.csv");
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].id, "x.csv");
    EXPECT_EQ(s[0].values, (Series{1.5, 2.0, -30.0}));
}

TEST(Ingest, TsvRowsWithLabelsAndPadding) {
    std::istringstream in("1\t0.5\t0.25\n2\t1\t2\t3\tNaN\tNaN\n");
    const auto s = ingest(in, InputFormat::tsv, "set");
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].label, "1");
    EXPECT_EQ(s[1].id, "set:1");
    EXPECT_EQ(s[1].values, (Series{1, 2, 3}));
}

TEST(Ingest, ErrorsCarryLineNumbers) {
    std::istringstream bad("1\n2\nfoo\n");
    try {
        ingest(bad, InputFormat::csv);
        FAIL();
    } catch (const IngestError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    std::istringstream inner("1\t1\tNaN\t2\n");
    EXPECT_THROW(ingest(inner, InputFormat::tsv), IngestError);
    std::istringstream empty("");
    EXPECT_THROW(ingest(empty, InputFormat::csv), IngestError);
    EXPECT_THROW(ingest(std::string("/nonexistent/file.csv"), InputFormat::csv), IngestError);
}

TEST(Ingest, FormatNames) {
    EXPECT_EQ(parse_input_format("ucr"), InputFormat::tsv);
    EXPECT_EQ(parse_input_format("csv"), InputFormat::csv);
    EXPECT_FALSE(parse_input_format("xml"));
}

TEST(Report, NumbersRoundTrip) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 12345678.0}) {
        EXPECT_EQ(*detail::parse_number(format_number(v)), v);
    }
}

TEST(Report, MatrixCsvRoundTrip) {
    const auto m = run_comparison(synthetic::mini_corpus());
    std::stringstream buf;
    write_matrix_csv(buf, m);
    const auto text = buf.str();
    const auto back = read_matrix_csv(buf);
    ASSERT_EQ(back.rows.size(), m.rows.size());
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        EXPECT_EQ(back.rows[i].id, m.rows[i].id);
        EXPECT_EQ(back.rows[i].status, m.rows[i].status);
        EXPECT_EQ(back.rows[i].errors, m.rows[i].errors);
    }
    std::stringstream again;
    write_matrix_csv(again, back);
    EXPECT_EQ(again.str(), text);
}

TEST(Report, QuotedFields) {
    EXPECT_EQ(detail::csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(detail::parse_csv_line("x,\"a,\"\"b\"\"\",3"), (std::vector<std::string>{"x", "a,\"b\"", "3"}));
}

TEST(Report, ProfileCsvHasThetaOne) {
    const std::vector<std::vector<double>> t{{1.0, 2.0}};
    const std::vector<std::string> names{"p", "q"};
    std::ostringstream out;
    write_profile_csv(out, performance_profile(t, names));
    EXPECT_EQ(out.str(), "theta,p,q\n1,1,0\n2,1,1\n");
}

TEST(ModelJson, RoundTripReconstructsIdentically) {
    synthetic::Rng rng(10);
    const auto norm = normalize(synthetic::random_series(rng, 300, 300));
    const auto seq = compress(norm.values, {0.1, unbounded});
    for (double scl : {0.0, 2.0, scl_infinity}) {
        DigitizationConfig dc;
        dc.scl = scl;
        const auto sym = digitize(seq, dc, 0.1);
        const auto j = nlohmann::json::parse(to_json(sym, ValueScaling{norm.mean, norm.std}).dump());
        const auto loaded = symbolic_from_json(j);
        EXPECT_EQ(loaded.series.symbols, sym.symbols);
        EXPECT_EQ(loaded.series.model.scl, scl);
        ASSERT_TRUE(loaded.scaling);
        EXPECT_EQ(loaded.scaling->mean, norm.mean);
        EXPECT_EQ(reconstruct(loaded.series), reconstruct(sym));
    }
}

TEST(ModelJson, MalformedInputIsRejected) {
    EXPECT_THROW(symbolic_from_json(nlohmann::json::parse("{}")), InvalidInput);
    EXPECT_THROW(symbolic_from_json(nlohmann::json::parse(
                     R"({"k":2,"centers":[[1,2]],"sigma_len":0,"sigma_inc":0,"scl":0,"tol_s":0,
                        "start_value":0,"original_length":1,"symbols":"a"})")),
                 InvalidInput);
}

TEST(MiniCorpus, BundledFileMatchesGenerator) {
    const auto file = ingest(std::string(ABBA_MINI_CORPUS), InputFormat::tsv);
    const auto gen = synthetic::mini_corpus();
    ASSERT_EQ(file.size(), 20u);
    ASSERT_EQ(gen.size(), 20u);
    for (std::size_t i = 0; i < 20; ++i) {
        EXPECT_EQ(file[i].label, gen[i].label);
        EXPECT_EQ(file[i].values, gen[i].values);
    }
}
