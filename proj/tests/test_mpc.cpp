#include <vector>

#include "doctest.h"

#include "bcmab/mpc.hpp"
#include "bcmab/rng.hpp"

using namespace bcmab;

TEST_CASE("threshold is max count times K over L") {
    SUBCASE("equal counts") {
        ComparisonOracle oracle({{5}, {5}, {5}}, 1, 15);
        auto k = oracle.threshold(16);
        CHECK(k[0] == doctest::Approx(5.0 * 1 / 15.0));
    }
    SUBCASE("per-arm max across participants") {
        // counts (10, 5) on one arm, K=2, L=10 -> k = 10*2/10 = 2
        ComparisonOracle oracle({{10, 10}, {5, 5}}, 2, 10);
        auto k = oracle.threshold(11);
        CHECK(k[0] == doctest::Approx(2.0));
        CHECK(k[1] == doctest::Approx(2.0));
    }
    SUBCASE("burn-in queries are rejected") {
        ComparisonOracle oracle({{5}}, 1, 15);
        CHECK_THROWS_AS(oracle.threshold(15), SimInvariantError);
    }
}

TEST_CASE("self-membership holds once counts clear the burn-in rate") {
    // All counts strictly above L/K makes k_i > 1, so n > n/k_i.
    ComparisonOracle oracle({{6, 6}, {6, 6}}, 2, 10);  // L/K = 5
    CHECK(oracle.membership(0, 0, 11));
    CHECK(oracle.membership(0, 1, 11));
}

TEST_CASE("a zero count on any arm excludes the candidate") {
    ComparisonOracle oracle({{0, 9}, {9, 9}}, 2, 6);
    CHECK_FALSE(oracle.membership(0, 1, 7));
    CHECK(oracle.membership(1, 1, 7));
}

TEST_CASE("membership equals the brute-force inequality on random tables") {
    RngStream s(21, "mpc");
    for (int trial = 0; trial < 300; ++trial) {
        int participants = 2 + static_cast<int>(s.uniform_int(5));  // M <= 6
        int arms = 1 + static_cast<int>(s.uniform_int(3));          // K <= 3
        int64_t burn_in = 3 * arms;
        std::vector<std::vector<int64_t>> counts(participants, std::vector<int64_t>(arms));
        for (auto& row : counts)
            for (auto& c : row) c = static_cast<int64_t>(s.uniform_int(21));  // counts <= 20
        ComparisonOracle oracle(counts, arms, burn_in);

        std::vector<int64_t> max_count(arms, 0);
        for (const auto& row : counts)
            for (int i = 0; i < arms; ++i) max_count[i] = std::max(max_count[i], row[i]);

        for (int m = 0; m < participants; ++m) {
            for (int j = 0; j < participants; ++j) {
                bool expected = true;
                for (int i = 0; i < arms; ++i) {
                    double k_i = static_cast<double>(max_count[i]) * arms / burn_in;
                    if (k_i <= 0.0 ||
                        !(static_cast<double>(counts[m][i]) > counts[j][i] / k_i)) {
                        expected = false;
                        break;
                    }
                }
                CHECK(oracle.membership(m, j, burn_in + 1) == expected);
            }
        }
    }
}

TEST_CASE("honest burn-in counts admit every honest participant") {
    // Round-robin burn-in with one extra sweep: every count is floor(L/K)+1,
    // so k_i > 1 and membership holds pairwise.
    const int arms = 5;
    const int64_t burn_in = 77;  // K does not divide L
    std::vector<std::vector<int64_t>> counts(4, std::vector<int64_t>(arms));
    for (int m = 0; m < 4; ++m)
        for (int i = 0; i < arms; ++i) {
            int64_t base = burn_in / arms + ((i >= 1 && i <= burn_in % arms) ? 1 : 0);
            counts[m][i] = base + 1;  // one post-burn-in sweep completed
        }
    ComparisonOracle oracle(counts, arms, burn_in);
    for (int m = 0; m < 4; ++m)
        for (int j = 0; j < 4; ++j) CHECK(oracle.membership(m, j, burn_in + arms + 1));
}
