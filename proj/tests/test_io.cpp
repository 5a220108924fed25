#include <doctest.h>

#include <random>

#include "core/errors.hpp"
#include "core/hard_channel.hpp"
#include "core/io.hpp"
#include "oracles.hpp"

using namespace chandeg;
using testing_oracles::random_channel;

TEST_CASE("channel JSON: exact channels round-trip byte for byte") {
    HardChannelSpec spec;
    spec.q = 3;
    spec.m = 3;
    const auto ch = build_hard_channel(spec);
    const std::string text = channel_to_text(ch);
    const auto back = channel_from_text(text);
    REQUIRE(back.exact());
    CHECK(channel_to_text(back) == text);
    for (int x = 0; x < ch.q; ++x)
        for (int y = 0; y < ch.output_count(); ++y)
            CHECK(back.w_exact[x][y] == ch.w_exact[x][y]);
}

TEST_CASE("channel JSON: float channels round-trip exactly too") {
    std::mt19937 rng(11501);
    const auto ch = random_channel(rng, 3, 5);
    const auto back = channel_from_text(channel_to_text(ch));
    CHECK_FALSE(back.exact());
    for (int x = 0; x < ch.q; ++x)
        for (int y = 0; y < 5; ++y) CHECK(back.w[x][y] == ch.w[x][y]);
    for (int x = 0; x < ch.q; ++x) CHECK(back.px[x] == ch.px[x]);
}

TEST_CASE("channel JSON: rational strings and integers stay exact, floats do not") {
    const std::string text = R"({
      "q": 2,
      "px": ["1/2", "1/2"],
      "outputs": ["a", "b"],
      "W": [["2/3", "1/3"], [0, 1]]
    })";
    const auto ch = channel_from_text(text);
    REQUIRE(ch.exact());
    CHECK(ch.w_exact[0][0] == Rat(2, 3));
    CHECK(ch.w_exact[1][0] == 0);
    CHECK(validate(ch).ok());

    const std::string mixed = R"({
      "q": 2,
      "px": [0.5, "1/2"],
      "outputs": ["a", "b"],
      "W": [["2/3", "1/3"], [0.0, 1.0]]
    })";
    CHECK_FALSE(channel_from_text(mixed).exact());
}

TEST_CASE("channel JSON: malformed input raises ParseError") {
    CHECK_THROWS_AS(channel_from_text("not json"), ParseError);
    CHECK_THROWS_AS(channel_from_text("{\"q\": 2}"), ParseError);
    CHECK_THROWS_AS(channel_from_text(R"({"q": 2, "px": [1, 0], "outputs": ["a"],
                                          "W": [["1/0"], ["1"]]})"),
                    ParseError);
    CHECK_THROWS_AS(channel_from_text(R"({"q": 2, "px": [1], "outputs": ["a"],
                                          "W": [["1"], ["1"]]})"),
                    ParseError);
    CHECK_THROWS_AS(channel_from_file("/nonexistent/channel.json"), ParseError);
}

TEST_CASE("degrade result JSON: blocks, drop and per-block pairs") {
    HardChannelSpec spec;
    spec.q = 2;
    spec.m = 2;
    const auto r = degrade_exhaustive(build_hard_channel(spec), 2);
    const auto j = degrade_result_to_json(r);
    REQUIRE(j.contains("partition"));
    REQUIRE(j.contains("drop"));
    REQUIRE(j.contains("per_block"));
    CHECK(j["partition"].size() == 2);
    CHECK(j["per_block"].size() == 2);
    CHECK(j["per_block"][0].contains("cost"));
    CHECK(j["per_block"][0].contains("quad_bound"));
    CHECK(j["drop"].get<double>() == doctest::Approx(0.14384103622589042).epsilon(1e-10));
}

TEST_CASE("format_sig12 and bound CSV rows") {
    CHECK(format_sig12(1.0 / 384.0) == "0.00260416666667");
    CHECK(bound_csv_header() == "q,L,lower_exact,lower_stirling,upper_old,upper_new\n");
    const std::string row = bound_csv_row(make_bound_report(2, 4));
    CHECK(row.rfind("2,4,0.00260416666667,", 0) == 0);
}
