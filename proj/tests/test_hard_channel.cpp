#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/hard_channel.hpp"

using namespace chandeg;

namespace {

const double kLn2 = std::log(2.0);
// Frozen from an independent evaluation (both computation paths agree).
const double kMiQ2M64 = 0.20112570383224601;

HardChannelSpec spec_of(int q, long long m) {
    HardChannelSpec s;
    s.q = q;
    s.m = m;
    return s;
}

}  // namespace

TEST_CASE("output count follows the combinations-with-repetition formula") {
    CHECK(hard_channel_output_count(2, 4) == 5);
    CHECK(hard_channel_output_count(3, 2) == 6);
    CHECK(hard_channel_output_count(4, 8) == 165);
    CHECK(hard_channel_output_count(5, 20) == 10626);
}

TEST_CASE("q=2, M=1 is the noiseless channel") {
    const auto ch = build_hard_channel(spec_of(2, 1));
    REQUIRE(ch.output_count() == 2);
    CHECK(ch.w_exact[0][0] == 1);
    CHECK(ch.w_exact[0][1] == 0);
    CHECK(ch.w_exact[1][1] == 1);
    CHECK(std::abs(mutual_information(ch) - kLn2) < 1e-14);
}

TEST_CASE("labels are colexicographic, entries match the definition") {
    const auto labels = composition_labels(spec_of(2, 2));
    REQUIRE(labels.size() == 3);
    CHECK(labels[0] == std::vector<int>{2, 0});
    CHECK(labels[1] == std::vector<int>{1, 1});
    CHECK(labels[2] == std::vector<int>{0, 2});

    const auto ch = build_hard_channel(spec_of(2, 2));
    CHECK(ch.outputs[0] == "2,0");
    CHECK(ch.w_exact[0][0] == Rat(2, 3));
    CHECK(ch.w_exact[0][1] == Rat(1, 3));
    CHECK(ch.w_exact[1][0] == 0);
    CHECK(ch.px_exact[0] == Rat(1, 2));
}

TEST_CASE("q=3, M=2 has six outputs and exact row sums") {
    const auto ch = build_hard_channel(spec_of(3, 2));
    REQUIRE(ch.output_count() == 6);
    for (int x = 0; x < 3; ++x) {
        Rat s = 0;
        for (const Rat& v : ch.w_exact[x]) s += v;
        CHECK(s == 1);
    }
    CHECK(validate(ch).ok());
}

TEST_CASE("size cap trips with an explanation") {
    auto spec = spec_of(4, 8);
    spec.max_outputs = 100;  // binom(11,3) = 165 > 100
    CHECK_THROWS_AS(build_hard_channel(spec), ResourceLimitError);
    CHECK_THROWS_AS(composition_labels(spec), ResourceLimitError);
    spec.max_outputs = 165;
    CHECK(build_hard_channel(spec).output_count() == 165);
}

TEST_CASE("rejects degenerate parameters") {
    CHECK_THROWS_AS(build_hard_channel(spec_of(1, 3)), std::invalid_argument);
    CHECK_THROWS_AS(build_hard_channel(spec_of(2, 0)), std::invalid_argument);
}

TEST_CASE("posterior_of_label: grid posteriors") {
    const auto corner = posterior_of_label(spec_of(3, 5), std::vector<int>{5, 0, 0});
    CHECK(corner[0] == 1);
    CHECK(corner[1] == 0);

    const auto mid = posterior_of_label(spec_of(2, 2), std::vector<int>{1, 1});
    CHECK(mid[0] == Rat(1, 2));
    CHECK(mid[1] == Rat(1, 2));

    const auto center = posterior_of_label(spec_of(3, 3), std::vector<int>{1, 1, 1});
    CHECK(center[0] == Rat(1, 3));

    CHECK_THROWS_AS(posterior_of_label(spec_of(2, 2), std::vector<int>{2, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(posterior_of_label(spec_of(2, 2), std::vector<int>{3, -1}),
                    std::invalid_argument);
}

TEST_CASE("posterior_of_label equals the built channel's Bayes posterior exactly") {
    for (int q = 2; q <= 4; ++q) {
        const auto spec = spec_of(q, 5);
        const auto ch = build_hard_channel(spec);
        const auto labels = composition_labels(spec);
        const auto jv = exact_joint_view(ch);
        for (std::size_t y = 0; y < labels.size(); ++y) {
            REQUIRE(jv.defined[y]);
            const auto expected = posterior_of_label(spec, labels[y]);
            for (int x = 0; x < q; ++x) CHECK(jv.posteriors[y][x] == expected[x]);
        }
    }
}

TEST_CASE("symmetry_orbits: small cases") {
    const auto o22 = symmetry_orbits(spec_of(2, 2));
    REQUIRE(o22.size() == 2);
    CHECK(o22[0] == std::vector<int>{0, 2});
    CHECK(o22[1] == std::vector<int>{1});

    const auto o31 = symmetry_orbits(spec_of(3, 1));
    REQUIRE(o31.size() == 1);
    CHECK(o31[0].size() == 3);

    const auto o32 = symmetry_orbits(spec_of(3, 2));
    REQUIRE(o32.size() == 2);
    CHECK(o32[0].size() == 3);  // permutations of (2,0,0)
    CHECK(o32[1].size() == 3);  // permutations of (1,1,0)
}

TEST_CASE("orbit submatrices satisfy the row/column permutation symmetry") {
    for (int q = 2; q <= 4; ++q) {
        const auto spec = spec_of(q, 4);
        const auto ch = build_hard_channel(spec);
        for (const auto& orbit : symmetry_orbits(spec))
            CHECK(gallager_symmetric_on(ch, orbit));
    }
}

TEST_CASE("gallager_symmetric_on: detects a broken orbit") {
    auto ch = build_hard_channel(spec_of(2, 2));
    ch.w_exact[0][0] = Rat(1, 3);  // now the (2,0)/(0,2) orbit rows differ
    ch.w_exact[0][1] = Rat(2, 3);
    CHECK_FALSE(gallager_symmetric_on(ch, std::vector<int>{0, 2}));
}

TEST_CASE("uniform output law holds exactly") {
    for (int q = 2; q <= 4; ++q) {
        const auto ch = build_hard_channel(spec_of(q, 6));
        const auto jv = exact_joint_view(ch);
        const Rat expect(1, BigInt(hard_channel_output_count(q, 6)));
        for (const Rat& p : jv.py) CHECK(p == expect);
    }
}

TEST_CASE("hard_channel_mi: closed form agrees with the generic path") {
    CHECK(std::abs(hard_channel_mi(spec_of(2, 1)) - kLn2) < 1e-14);
    CHECK(std::abs(hard_channel_mi(spec_of(2, 2)) - 2.0 / 3.0 * kLn2) < 1e-14);

    for (int q = 2; q <= 3; ++q)
        for (long long m : {1LL, 3LL, 7LL, 16LL}) {
            const auto spec = spec_of(q, m);
            CHECK(std::abs(hard_channel_mi(spec) -
                           mutual_information(build_hard_channel(spec))) < 1e-10);
        }

    const auto spec64 = spec_of(2, 64);
    CHECK(std::abs(hard_channel_mi(spec64) - kMiQ2M64) < 1e-9);
    CHECK(std::abs(mutual_information(build_hard_channel(spec64)) - kMiQ2M64) < 1e-9);
}

TEST_CASE("mutual information of the family falls as the grid refines") {
    // Recorded trend: noise grows with M, the limit is ln q - (H_q - 1).
    for (int q = 2; q <= 4; ++q) {
        double prev = hard_channel_mi(spec_of(q, 1));
        for (long long m = 2; m <= 12; ++m) {
            const double cur = hard_channel_mi(spec_of(q, m));
            CHECK(cur < prev + 1e-12);
            prev = cur;
        }
    }
}
