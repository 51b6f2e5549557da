#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "bcmab/aggregate.hpp"
#include "bcmab/rng.hpp"

using namespace bcmab;

namespace {

// Brute-force trim oracle: remove the f largest and f smallest (value, id)
// pairs, ordered by value then id.
std::vector<TrustedMember> brute_trim(std::vector<TrustedMember> column, int f) {
    std::sort(column.begin(), column.end(), [](const TrustedMember& a, const TrustedMember& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.id < b.id;
    });
    int n = static_cast<int>(column.size());
    if (n <= 2 * f) return {};
    std::vector<TrustedMember> kept(column.begin() + f, column.end() - f);
    std::sort(kept.begin(), kept.end(),
              [](const TrustedMember& a, const TrustedMember& b) { return a.id < b.id; });
    return kept;
}

std::vector<std::vector<double>> single_arm_broadcasts(const std::vector<double>& values) {
    std::vector<std::vector<double>> b(values.size());
    for (size_t i = 0; i < values.size(); ++i) b[i] = {values[i]};
    return b;
}

}  // namespace

TEST_CASE("filter set is empty during burn-in") {
    // counts strictly above L/K so the threshold exceeds 1
    ComparisonOracle oracle({{6, 6}, {6, 6}}, 2, 10);
    CHECK(build_filter_set(0, 10, oracle, 2, 10).empty());
    CHECK_FALSE(build_filter_set(0, 11, oracle, 2, 10).empty());
}

TEST_CASE("frozen counts eventually drop out of the filter set") {
    // Participant 1 stopped pulling arm 0 at the burn-in level while others
    // kept growing.
    ComparisonOracle oracle({{40, 40}, {8, 40}, {40, 40}}, 2, 20);
    auto a0 = build_filter_set(0, 21, oracle, 3, 20);
    CHECK(std::find(a0.begin(), a0.end(), 1) == a0.end());
    CHECK(std::find(a0.begin(), a0.end(), 0) != a0.end());
    CHECK(std::find(a0.begin(), a0.end(), 2) != a0.end());
}

TEST_CASE("trusted set drops the f extremes per arm") {
    // f=1, values {(0:0.1),(1:0.5),(2:0.55),(3:0.6),(4:0.9)} -> {1,2,3}
    auto broadcasts = single_arm_broadcasts({0.1, 0.5, 0.55, 0.6, 0.9});
    TrustedSet ts = build_trusted_set(AggregationOption::Option1, {0, 1, 2, 3, 4}, broadcasts,
                                      1, 100, 10, {}, 1);
    REQUIRE(ts.per_arm.size() == 1);
    CHECK(ts.member_union == std::vector<int>{1, 2, 3});

    SUBCASE("f=0 keeps everyone") {
        TrustedSet all = build_trusted_set(AggregationOption::Option1, {0, 1, 2, 3, 4},
                                           broadcasts, 0, 100, 10, {}, 1);
        CHECK(all.member_union == std::vector<int>{0, 1, 2, 3, 4});
    }
    SUBCASE("option 3 removes blocklisted ids") {
        TrustedSet opt3 = build_trusted_set(AggregationOption::Option3, {0, 1, 2, 3, 4},
                                            broadcasts, 1, 100, 10, {3}, 1);
        CHECK(opt3.member_union == std::vector<int>{1, 2});
    }
}

TEST_CASE("option 1 falls back to the burn-in placeholder") {
    auto broadcasts = single_arm_broadcasts({0.1, 0.5, 0.9});
    SUBCASE("during burn-in") {
        TrustedSet ts = build_trusted_set(AggregationOption::Option1, {}, broadcasts, 1, 7, 10,
                                          {}, 5);
        CHECK(ts.placeholder);
        CHECK(ts.burn_in_arm == 7 % 5);
    }
    SUBCASE("when the 2f gate fails") {
        TrustedSet ts = build_trusted_set(AggregationOption::Option1, {0, 1}, broadcasts, 1,
                                          100, 10, {}, 1);
        CHECK(ts.placeholder);
    }
    SUBCASE("option 2 trims regardless and may end empty") {
        TrustedSet ts = build_trusted_set(AggregationOption::Option2, {0, 1}, broadcasts, 1,
                                          100, 10, {}, 1);
        CHECK_FALSE(ts.placeholder);
        CHECK(ts.empty());
    }
}

TEST_CASE("trim equals the brute-force oracle exhaustively") {
    // All multiset sizes <= 7, f <= 2, randomized values with deliberate ties.
    RngStream s(31, "trim");
    for (int trial = 0; trial < 400; ++trial) {
        int n = 1 + static_cast<int>(s.uniform_int(7));
        int f = static_cast<int>(s.uniform_int(3));
        int arms = 1 + static_cast<int>(s.uniform_int(2));
        std::vector<int> filter(n);
        std::vector<std::vector<double>> broadcasts(n, std::vector<double>(arms));
        for (int m = 0; m < n; ++m) {
            filter[m] = m;
            for (int i = 0; i < arms; ++i)
                broadcasts[m][i] = static_cast<double>(s.uniform_int(5)) / 4.0;  // ties likely
        }
        TrustedSet ts = build_trusted_set(AggregationOption::Option2, filter, broadcasts, f,
                                          100, 10, {}, arms);
        for (int i = 0; i < arms; ++i) {
            std::vector<TrustedMember> column;
            for (int m = 0; m < n; ++m) column.push_back({m, broadcasts[m][i]});
            auto expected = brute_trim(column, f);
            REQUIRE(ts.per_arm[i].size() == expected.size());
            for (size_t k = 0; k < expected.size(); ++k) {
                CHECK(ts.per_arm[i][k].id == expected[k].id);
                CHECK(ts.per_arm[i][k].value == expected[k].value);
            }
        }
    }
}

TEST_CASE("surviving values are sandwiched by honest values") {
    // |A| > 2f with at least |A|-f honest: every kept value lies inside the
    // honest min/max on that arm.
    RngStream s(32, "sandwich");
    for (int trial = 0; trial < 300; ++trial) {
        int f = 1 + static_cast<int>(s.uniform_int(2));
        int n = 2 * f + 1 + static_cast<int>(s.uniform_int(4));
        int dishonest = static_cast<int>(s.uniform_int(f + 1));  // <= f
        std::vector<int> filter(n);
        std::vector<std::vector<double>> broadcasts(n, std::vector<double>(1));
        double lo = 1e300, hi = -1e300;
        for (int m = 0; m < n; ++m) {
            filter[m] = m;
            double v = m < dishonest ? s.uniform(-1.0, 3.0) : s.next_unit();
            broadcasts[m][0] = v;
            if (m >= dishonest) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        TrustedSet ts = build_trusted_set(AggregationOption::Option2, filter, broadcasts, f,
                                          100, 10, {}, 1);
        for (const auto& member : ts.per_arm[0]) {
            CHECK(member.value >= lo - 1e-12);
            CHECK(member.value <= hi + 1e-12);
        }
    }
}

TEST_CASE("trusted set serialization round-trips") {
    auto broadcasts = single_arm_broadcasts({0.1, 0.5, 0.55, 0.6, 0.9});
    TrustedSet ts = build_trusted_set(AggregationOption::Option1, {0, 1, 2, 3, 4}, broadcasts,
                                      1, 100, 10, {}, 1);
    TrustedSet back = parse_trusted_set(serialize_trusted_set(ts));
    CHECK(back == ts);

    TrustedSet placeholder;
    placeholder.placeholder = true;
    placeholder.burn_in_arm = 3;
    CHECK(parse_trusted_set(serialize_trusted_set(placeholder)).burn_in_arm == 3);
}

TEST_CASE("blocklist accepts only verifying conflicting chains") {
    std::vector<KeyPair> keys = {keygen(1), keygen(2)};
    std::vector<uint64_t> pks = {keys[0].pk, keys[1].pk};
    Blocklist d;

    SUBCASE("no evidence leaves the set unchanged") {
        Blocklist next = update_blocklist(d, {}, pks);
        CHECK(next.ids.empty());
    }
    SUBCASE("verified equivocation is recorded") {
        EquivocationEvidence ev;
        ev.accused = 0;
        ev.first = make_root_message("a", 0, keys[0].sk);
        ev.second = make_root_message("b", 0, keys[0].sk);
        Blocklist next = update_blocklist(d, {ev}, pks);
        CHECK(next.ids.count(0) == 1);
        // monotone: feeding it again keeps one entry
        Blocklist again = update_blocklist(next, {ev}, pks);
        CHECK(again.ids.size() == 1);
        CHECK(again.evidence.size() == 1);
    }
    SUBCASE("forged evidence is rejected") {
        EquivocationEvidence ev;
        ev.accused = 0;
        ev.first = make_root_message("a", 0, keys[0].sk);
        ev.second = make_root_message("b", 0, keys[1].sk);  // wrong key
        ev.second.chain[0].signer = 0;
        Blocklist next = update_blocklist(d, {ev}, pks);
        CHECK(next.ids.empty());
    }
    SUBCASE("identical payloads are not equivocation") {
        EquivocationEvidence ev;
        ev.accused = 0;
        ev.first = make_root_message("a", 0, keys[0].sk);
        ev.second = ev.first;
        CHECK(update_blocklist(d, {ev}, pks).ids.empty());
    }
}

TEST_CASE("safe zone keeps near estimators and drops shifted ones") {
    // eps = 0.2: |hat - b| <= 0.1 on every arm.
    std::vector<double> hat = {0.5, 0.5};
    std::vector<std::vector<double>> broadcasts = {
        {0.55, 0.45},  // in
        {0.62, 0.50},  // out on arm 0
        {0.50, 0.39},  // out on arm 1 (0.11 > 0.1)
    };
    auto c = build_safe_zone_set(hat, broadcasts, 0.2);
    CHECK(c == std::vector<int>{0});
}
