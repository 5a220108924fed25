#include <doctest.h>

#include <cmath>
#include <random>

#include "core/errors.hpp"
#include "core/hard_channel.hpp"
#include "core/quantizer.hpp"
#include "oracles.hpp"

using namespace chandeg;
using testing_oracles::dirichlet;
using testing_oracles::random_channel;
using testing_oracles::random_subset;

namespace {

const double kLn2 = std::log(2.0);
// Frozen from an independent evaluation of the definitions.
const double kW22TwoBlockDrop = 0.14384103622589042;
const double kDpM10L4 = 0.027688229376289397;

Channel w22() {
    HardChannelSpec spec;
    spec.q = 2;
    spec.m = 2;
    return build_hard_channel(spec);
}

Channel hard2(long long m) {
    HardChannelSpec spec;
    spec.q = 2;
    spec.m = m;
    return build_hard_channel(spec);
}

}  // namespace

TEST_CASE("merge_cost: singletons and identical posteriors are free") {
    const auto ch = w22();
    CHECK(merge_cost(ch, std::vector<int>{1}) == 0.0);

    // two outputs carrying the same posterior
    const auto dup = Channel::from_doubles(
        2, {"a", "b", "c"}, {{0.2, 0.2, 0.6}, {0.1, 0.1, 0.8}}, {0.5, 0.5});
    CHECK(std::abs(merge_cost(dup, std::vector<int>{0, 1})) < 1e-15);
}

TEST_CASE("merge_cost: the outer pair of W_2(2,2)") {
    CHECK(std::abs(merge_cost(w22(), std::vector<int>{0, 2}) - 2.0 / 3.0 * kLn2) < 1e-14);
}

TEST_CASE("merge_cost: rejects bad sets, zero-probability sets are free") {
    const auto ch = w22();
    CHECK_THROWS_AS(merge_cost(ch, std::vector<int>{3}), std::invalid_argument);
    CHECK_THROWS_AS(merge_cost(ch, std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(merge_cost(ch, std::vector<int>{1, 1}), std::invalid_argument);

    const auto dead = Channel::from_doubles(
        2, {"dead1", "dead2", "a", "b"},
        {{0.0, 0.0, 1.0, 0.0}, {0.0, 0.0, 0.0, 1.0}}, {0.5, 0.5});
    CHECK(merge_cost(dead, std::vector<int>{0, 1}) == 0.0);
    CHECK(merge_cost_quad(dead, std::vector<int>{0, 1}) == 0.0);
}

TEST_CASE("merge_cost_quad: W_2(2,2) outer pair equals 1/6") {
    const auto ch = w22();
    CHECK(std::abs(merge_cost_quad(ch, std::vector<int>{0, 2}) - 1.0 / 6.0) < 1e-15);
    CHECK(merge_cost_quad(ch, std::vector<int>{1}) == 0.0);
    // the exact cost dominates its quadratic bound on this set
    CHECK(merge_cost(ch, std::vector<int>{0, 2}) >=
          merge_cost_quad(ch, std::vector<int>{0, 2}));
}

TEST_CASE("merge_cost_quad: the two algebraic forms agree") {
    std::mt19937 rng(8201);
    for (int t = 0; t < 200; ++t) {
        const int q = 2 + t % 3;
        const int n = 2 + t % 6;
        const auto ch = random_channel(rng, q, n, t % 6 == 0);
        const auto A = random_subset(rng, n);
        const auto [mean_form, pair_form] = merge_cost_quad_forms(ch, A);
        CHECK(std::abs(mean_form - pair_form) < 1e-12);
    }
}

TEST_CASE("merge costs: quadratic bound never exceeds the exact cost") {
    std::mt19937 rng(8202);
    for (int t = 0; t < 300; ++t) {
        const int q = 2 + t % 4;
        const int n = 2 + t % 7;
        const auto ch = random_channel(rng, q, n, t % 7 == 0);
        const auto A = random_subset(rng, n);
        const double c = merge_cost(ch, A);
        const double b = merge_cost_quad(ch, A);
        CHECK(c >= b - 1e-12);
        CHECK(b >= -1e-12);
    }
}

TEST_CASE("concavity_defect: equality at coincident points, frozen two-point case") {
    const std::vector<std::vector<double>> same = {{0.3, 0.4}, {0.3, 0.4}};
    const std::vector<double> half = {0.5, 0.5};
    const auto eq = concavity_defect(same, half);
    CHECK(std::abs(eq.jensen_gap) < 1e-15);
    CHECK(std::abs(eq.quad_bound) < 1e-15);

    const std::vector<std::vector<double>> corners = {{1.0, 0.0}, {0.0, 1.0}};
    const auto d = concavity_defect(corners, half);
    CHECK(std::abs(d.jensen_gap - kLn2) < 1e-14);
    CHECK(std::abs(d.quad_bound - 0.25) < 1e-15);
    CHECK(d.jensen_gap >= d.quad_bound);
}

TEST_CASE("concavity_defect: input contract") {
    const std::vector<std::vector<double>> pts = {{0.5, 0.5}, {0.1, 0.2}};
    CHECK_THROWS_AS(concavity_defect(pts, std::vector<double>{0.7, 0.7}),
                    std::invalid_argument);
    CHECK_THROWS_AS(concavity_defect(pts, std::vector<double>{1.5, -0.5}),
                    std::invalid_argument);
    const std::vector<std::vector<double>> outside = {{1.5, 0.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(concavity_defect(outside, std::vector<double>{0.5, 0.5}),
                    std::invalid_argument);
}

TEST_CASE("degrade_exhaustive: trivial targets") {
    const auto ch = w22();
    const auto all = degrade_exhaustive(ch, 3);
    CHECK(std::abs(all.drop) < 1e-15);

    const auto one = degrade_exhaustive(ch, 1);
    CHECK(std::abs(one.drop - mutual_information(ch)) < 1e-14);
    CHECK(one.partition.blocks.size() == 1);
}

TEST_CASE("degrade_exhaustive: W_2(2,2) to two letters") {
    const auto r = degrade_exhaustive(w22(), 2);
    CHECK(std::abs(r.drop - kW22TwoBlockDrop) < 1e-12);
    // optimum merges the middle output with one of the two extremes
    REQUIRE(r.partition.blocks.size() == 2);
    const bool twin_a = r.partition.blocks[0] == std::vector<int>{0, 1};
    const bool twin_b = r.partition.blocks[0] == std::vector<int>{0};
    CHECK((twin_a || twin_b));
}

TEST_CASE("degrade_exhaustive: guards") {
    std::mt19937 rng(8203);
    const auto big = random_channel(rng, 2, 13);
    CHECK_THROWS_AS(degrade_exhaustive(big, 4), ResourceLimitError);
    const auto ch = w22();
    CHECK_THROWS_AS(degrade_exhaustive(ch, 0), std::invalid_argument);
    CHECK_THROWS_AS(degrade_exhaustive(ch, 4), std::invalid_argument);
}

TEST_CASE("degrade_exhaustive: exactly mode pays for forced block counts") {
    // all posteriors equal: at-most mode collapses to one block for free
    const auto flat = Channel::from_doubles(
        2, {"a", "b", "c"}, {{0.2, 0.3, 0.5}, {0.2, 0.3, 0.5}}, {0.5, 0.5});
    const auto atmost = degrade_exhaustive(flat, 2, BlockMode::AtMost);
    CHECK(atmost.partition.blocks.size() == 1);
    const auto exact = degrade_exhaustive(flat, 2, BlockMode::Exactly);
    CHECK(exact.partition.blocks.size() == 2);
    CHECK(std::abs(exact.drop) < 1e-15);  // still free here

    const auto r2 = degrade_exhaustive(w22(), 2, BlockMode::Exactly);
    CHECK(std::abs(r2.drop - kW22TwoBlockDrop) < 1e-12);
}

TEST_CASE("degrade_exhaustive: never pays when duplicate posteriors suffice") {
    const auto dup = Channel::from_doubles(
        2, {"a", "a2", "b", "b2"},
        {{0.3, 0.1, 0.45, 0.15}, {0.15, 0.05, 0.6, 0.2}}, {0.5, 0.5});
    // posteriors of a/a2 coincide, as do b/b2
    const auto r = degrade_exhaustive(dup, 2);
    CHECK(std::abs(r.drop) < 1e-14);
}

TEST_CASE("degrade_exhaustive: drop equals the per-block cost sum") {
    std::mt19937 rng(8204);
    for (int t = 0; t < 40; ++t) {
        const int q = 2 + t % 3;
        const int n = 2 + t % 6;
        const auto ch = random_channel(rng, q, n, t % 5 == 0);
        const int L = 1 + t % n;
        const auto r = degrade_exhaustive(ch, L);
        double sum = 0.0;
        for (const auto& b : r.per_block) {
            sum += b.cost;
            CHECK(b.cost >= b.quad_bound - 1e-12);
        }
        CHECK(std::abs(r.drop - sum) < 1e-10);
        CHECK(r.drop >= -1e-12);
    }
}

TEST_CASE("degrade_exhaustive: cost nonincreasing in the letter budget") {
    std::mt19937 rng(8205);
    const auto ch = random_channel(rng, 3, 7);
    double prev = mutual_information(ch);
    for (int L = 1; L <= 7; ++L) {
        const double cost = degrade_exhaustive(ch, L).drop;
        CHECK(cost <= prev + 1e-12);
        prev = cost;
    }
    CHECK(std::abs(prev) < 1e-12);  // L = |Y| is free
}

TEST_CASE("degrade_exhaustive: optimal cost invariant under output permutation") {
    std::mt19937 rng(8206);
    const auto ch = random_channel(rng, 2, 6);
    auto perm = ch;
    const std::vector<int> sigma = {3, 0, 5, 1, 4, 2};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 6; ++y) perm.w[x][y] = ch.w[x][sigma[y]];
    for (int L = 1; L <= 6; ++L)
        CHECK(std::abs(degrade_exhaustive(ch, L).drop - degrade_exhaustive(perm, L).drop) <
              1e-12);
}

TEST_CASE("degrade_greedy: trivial target and the W_2(2,2) optimum") {
    const auto ch = w22();
    CHECK(std::abs(degrade_greedy(ch, 3).drop) < 1e-15);
    CHECK(std::abs(degrade_greedy(ch, 2).drop - kW22TwoBlockDrop) < 1e-12);
    CHECK_THROWS_AS(degrade_greedy(ch, 0), std::invalid_argument);
}

TEST_CASE("degrade_greedy: never beats the exhaustive optimum") {
    std::mt19937 rng(8207);
    for (int t = 0; t < 25; ++t) {
        const int q = 2 + t % 3;
        const int n = 4 + t % 6;  // up to 9 outputs
        const auto ch = random_channel(rng, q, n, t % 6 == 0);
        for (int L = 1; L <= n; L += 2) {
            const double g = degrade_greedy(ch, L).drop;
            const double e = degrade_exhaustive(ch, L).drop;
            CHECK(g >= e - 1e-12);
        }
    }
}

TEST_CASE("degrade_binary_dp: input contract and trivial target") {
    std::mt19937 rng(8208);
    const auto ch3 = random_channel(rng, 3, 4);
    CHECK_THROWS_AS(degrade_binary_dp(ch3, 2), std::invalid_argument);

    const auto ch = hard2(6);
    CHECK(std::abs(degrade_binary_dp(ch, 7).drop) < 1e-15);
}

TEST_CASE("degrade_binary_dp: matches exhaustive on W_2(2,2) and fixture at M=10") {
    CHECK(std::abs(degrade_binary_dp(w22(), 2).drop - kW22TwoBlockDrop) < 1e-12);
    CHECK(std::abs(degrade_binary_dp(hard2(10), 4).drop - kDpM10L4) < 1e-11);
}

TEST_CASE("degrade_binary_dp: equals exhaustive on random binary channels") {
    std::mt19937 rng(8209);
    for (int t = 0; t < 25; ++t) {
        const int n = 2 + t % 8;  // up to 9 outputs
        const auto ch = random_channel(rng, 2, n, t % 5 == 0);
        for (int L = 1; L <= n; ++L) {
            const double d = degrade_binary_dp(ch, L).drop;
            const double e = degrade_exhaustive(ch, L).drop;
            CHECK(std::abs(d - e) < 1e-12);
        }
    }
}

TEST_CASE("degrade: zero-probability outputs merge for free") {
    const auto dead = Channel::from_doubles(
        2, {"dead", "a", "b", "c"},
        {{0.0, 0.5, 0.3, 0.2}, {0.0, 0.1, 0.4, 0.5}}, {0.5, 0.5});
    const auto alive = Channel::from_doubles(
        2, {"a", "b", "c"}, {{0.5, 0.3, 0.2}, {0.1, 0.4, 0.5}}, {0.5, 0.5});
    for (int L = 1; L <= 3; ++L) {
        CHECK(std::abs(degrade_exhaustive(dead, L).drop - degrade_exhaustive(alive, L).drop) <
              1e-13);
        CHECK(std::abs(degrade_binary_dp(dead, L).drop - degrade_binary_dp(alive, L).drop) <
              1e-13);
        CHECK(std::abs(degrade_greedy(dead, L).drop - degrade_greedy(alive, L).drop) < 1e-13);
    }
}

TEST_CASE("degrade: quadratic work guards trip on oversized inputs") {
    std::mt19937 rng(8210);
    const auto wide = random_channel(rng, 2, 3000);
    CHECK_THROWS_AS(degrade_greedy(wide, 1), ResourceLimitError);
    const auto wider = random_channel(rng, 2, 100000);
    CHECK_THROWS_AS(degrade_binary_dp(wider, 4), ResourceLimitError);
}

TEST_CASE("degrade: dispatcher routes methods") {
    const auto ch = w22();
    CHECK(std::abs(degrade(ch, 2, Method::Greedy).drop - kW22TwoBlockDrop) < 1e-12);
    CHECK(std::abs(degrade(ch, 2, Method::Exhaustive).drop - kW22TwoBlockDrop) < 1e-12);
    CHECK(std::abs(degrade(ch, 2, Method::BinaryDP).drop - kW22TwoBlockDrop) < 1e-12);
}
