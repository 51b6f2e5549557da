#include <cmath>
#include <sstream>

#include "doctest.h"

#include "bcmab/contract.hpp"
#include "bcmab/presets.hpp"
#include "bcmab/sim.hpp"

using namespace bcmab;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

TrustedSet one_arm_set(std::vector<TrustedMember> members) {
    TrustedSet ts;
    ts.per_arm.push_back(std::move(members));
    for (const auto& m : ts.per_arm[0]) ts.member_union.push_back(m.id);
    return ts;
}
}  // namespace

TEST_CASE("sc_sort orders by public key bytes, independent of input order") {
    std::vector<KeyPair> keys = {keygen(10), keygen(11), keygen(12)};
    auto a = sc_sort({0, 1, 2}, keys);
    auto b = sc_sort({2, 0, 1}, keys);
    CHECK(a == b);
    for (size_t i = 1; i < a.size(); ++i) CHECK(keys[a[i - 1]].pk < keys[a[i]].pk);
    CHECK(sc_sort({1}, keys) == std::vector<int>{1});
}

TEST_CASE("halving update averages the hat with the prior") {
    GlobalUpdateState st(1);
    st.mu_prev = {0.4};
    TrustedSet ts = one_arm_set({{0, 0.5}, {1, 0.7}});  // hat = 0.6
    GlobalEstimate ge = global_update(UpdateRule::Halving, ts, st, 10, 0.0, {}, 1);
    CHECK(ge.hat[0] == doctest::Approx(0.6));
    CHECK(ge.values[0] == doctest::Approx(0.5));
}

TEST_CASE("contraction update uses P_t = 1 - 1/t against the stored hat") {
    GlobalUpdateState st(1);
    st.mu_prev = {0.5};
    st.hat_prev = {0.9};
    TrustedSet ts = one_arm_set({{0, 0.8}});
    GlobalEstimate ge = global_update(UpdateRule::Contraction, ts, st, 10, 0.0, {}, 1);
    CHECK(ge.values[0] == doctest::Approx(0.9 * 0.5 + 0.1 * 0.9));  // 0.54
    CHECK(ge.hat[0] == doctest::Approx(0.8));
}

TEST_CASE("empty trusted set: halving goes INFINITE, contraction stays finite") {
    GlobalUpdateState st(2);
    st.mu_prev = {0.5, 0.5};
    st.hat_prev = {0.6, 0.6};
    TrustedSet empty;
    empty.per_arm.assign(2, {});
    GlobalEstimate halving = global_update(UpdateRule::Halving, empty, st, 10, 0.0, {}, 2);
    CHECK(std::isinf(halving.values[0]));
    CHECK(std::isinf(halving.values[1]));
    CHECK_FALSE(sc_block_verify(halving));

    GlobalEstimate contraction =
        global_update(UpdateRule::Contraction, empty, st, 10, 0.0, {}, 2);
    CHECK(std::isfinite(contraction.values[0]));
    CHECK(sc_block_verify(contraction));
}

TEST_CASE("placeholder carries the prior estimate forward") {
    GlobalUpdateState st(2);
    st.mu_prev = {0.0, 0.0};
    TrustedSet placeholder;
    placeholder.placeholder = true;
    placeholder.burn_in_arm = 1;
    GlobalEstimate ge = global_update(UpdateRule::Halving, placeholder, st, 3, 0.0, {}, 2);
    CHECK(ge.values == std::vector<double>{0.0, 0.0});
    CHECK_FALSE(ge.from_aggregation);
    CHECK(sc_block_verify(ge));  // genesis zeros approve
}

TEST_CASE("safe-zone update filters against the current hat") {
    GlobalUpdateState st(1);
    st.mu_prev = {0.5};
    st.hathat_prev = {0.8};
    std::vector<std::vector<double>> broadcasts = {{0.52}, {0.95}};
    TrustedSet ts = one_arm_set({{0, 0.52}, {1, 0.95}});  // hat = 0.735... no:
    // hat = (0.52 + 0.95)/2 = 0.735; with eps=0.5 the zone is +-0.25: both in.
    GlobalEstimate ge = global_update(UpdateRule::SafeZone, ts, st, 10, 0.5, broadcasts, 1);
    CHECK(ge.safe_zone == std::vector<int>{0, 1});
    CHECK(ge.hathat[0] == doctest::Approx((0.52 + 0.95) / 2.0));
    CHECK(ge.values[0] == doctest::Approx(0.9 * 0.5 + 0.1 * 0.8));
}

TEST_CASE("block verification needs one finite entry and all finite <= 2") {
    GlobalEstimate ge;
    ge.values = {kInf, kInf};
    CHECK_FALSE(sc_block_verify(ge));
    ge.values = {0.5, 0.7};
    CHECK(sc_block_verify(ge));
    ge.values = {2.5, 0.7};
    CHECK_FALSE(sc_block_verify(ge));
    ge.values = {kInf, 0.7};
    CHECK(sc_block_verify(ge));
}

TEST_CASE("chain detects a flipped byte at the exact block") {
    Simulation sim(make_preset("no-attack", 40, 5));
    sim.run();
    REQUIRE(sim.chain().size() == 40);
    CHECK_FALSE(sim.chain().validate(sim.public_keys()).has_value());

    std::ostringstream os;
    export_chain(os, serialize_scenario(sim.config()), sim.chain());
    std::string text = os.str();

    // Locate block 3's line and flip one digit inside it.
    size_t pos = 0;
    for (int line = 0; line < 4; ++line) pos = text.find('\n', pos) + 1;
    size_t flip = text.find('\t', pos) + 1;  // inside the prev-digest field
    text[flip] = text[flip] == '5' ? '6' : '5';

    std::istringstream is(text);
    ImportedChain imported = import_chain(is, sim.public_keys());
    REQUIRE(imported.first_invalid.has_value());
    CHECK(*imported.first_invalid == 3);
}

TEST_CASE("untampered export re-imports bit-exactly") {
    Simulation sim(make_preset("theorem1", 60, 6));
    sim.run();
    std::ostringstream os;
    export_chain(os, serialize_scenario(sim.config()), sim.chain());
    std::istringstream is(os.str());
    ImportedChain imported = import_chain(is, sim.public_keys());
    CHECK_FALSE(imported.first_invalid.has_value());
    REQUIRE(imported.blocks.size() == sim.chain().size());
    for (size_t i = 0; i < imported.blocks.size(); ++i)
        CHECK(imported.blocks[i].digest == sim.chain().blocks()[i].digest);

    // replay reconstructs every pull count
    auto replayed = replay_counts(imported.blocks, sim.config().num_participants,
                                  sim.config().num_arms);
    for (int m = 0; m < sim.config().num_participants; ++m)
        CHECK(replayed[m] == sim.participants()[m].pulls);
}

TEST_CASE("append rejects bad linkage") {
    Chain chain;
    Block b;
    b.index = 1;  // does not extend the empty chain
    CHECK_THROWS_AS(chain.append(b), SimInvariantError);
}

TEST_CASE("consensus-failed blocks round-trip through the export") {
    // INFINITE globals, an empty non-placeholder trusted set, and no reward
    // records — the shape a b_t = 0 step writes.
    std::vector<KeyPair> keys = {keygen(50), keygen(51)};
    std::vector<uint64_t> pks = {keys[0].pk, keys[1].pk};
    Chain chain;
    Block b;
    b.index = 0;
    b.approved = 0;
    b.global.assign(2, std::numeric_limits<double>::infinity());
    b.arms = {1, 0};
    b.trusted.per_arm.assign(2, {});
    for (int m = 0; m < 2; ++m) {
        SignedEstimator e;
        e.id = m;
        e.values = {0.25, 0.75};
        e.sig = sign(keys[m].sk, estimator_bytes(0, m, e.values));
        b.estimators.push_back(e);
    }
    b.count_commitments = {commit(1, 2), commit(3, 4), commit(5, 6), commit(7, 8)};
    chain.append(std::move(b));
    CHECK_FALSE(chain.validate(pks).has_value());

    std::ostringstream os;
    export_chain(os, "{}", chain);
    std::istringstream is(os.str());
    ImportedChain imported = import_chain(is, pks);
    CHECK_FALSE(imported.first_invalid.has_value());
    REQUIRE(imported.blocks.size() == 1);
    CHECK(std::isinf(imported.blocks[0].global[0]));
    CHECK(imported.blocks[0].honest_rewards.empty());
    CHECK(imported.blocks[0].trusted.per_arm.size() == 2);
    CHECK(imported.blocks[0].digest == chain.blocks()[0].digest);
}

TEST_CASE("no-attack hat estimates are unbiased") {
    // With f = 0 and the halving rule, the time-average of the trim mean
    // stays within 3 standard errors of the true mean on every arm.
    ScenarioConfig cfg = make_preset("no-attack", 1500, 9);
    Simulation sim(cfg, {false, false});
    std::vector<double> hat_sum(cfg.num_arms, 0.0);
    int64_t samples = 0;
    sim.set_observer([&](const RoundState& rs) {
        if (!rs.approved || rs.trusted.placeholder) return;
        for (int i = 0; i < cfg.num_arms; ++i) hat_sum[i] += rs.hat[i];
        ++samples;
    });
    sim.run();
    REQUIRE(samples > 1000);
    // Each hat averages 4 honest running means holding at least floor(L/K)
    // draws, so its standard error never exceeds this bound after burn-in;
    // the time average concentrates at least as well.
    double floor_pulls = static_cast<double>(cfg.burn_in / cfg.num_arms);
    double se = 0.5 / std::sqrt(4.0 * floor_pulls);
    for (int i = 0; i < cfg.num_arms; ++i) {
        double avg = hat_sum[i] / static_cast<double>(samples);
        CHECK(std::abs(avg - cfg.arm_means[i]) < 3.0 * se);
    }
}

TEST_CASE("contraction closes most of the initial estimation gap") {
    // Distance-cost regime at desk scale: the worst-arm error of the global
    // estimate at t = T sits below its value at t = L for >= 95% of seeds.
    int improved = 0;
    const int seeds = 20;
    for (uint64_t seed = 1; seed <= seeds; ++seed) {
        ScenarioConfig cfg = make_preset("theorem2", 2000, seed);
        Simulation sim(cfg, {false, false});
        double err_at_burn_in = -1.0, err_at_end = -1.0;
        sim.set_observer([&](const RoundState& rs) {
            if (!rs.approved) return;
            double worst = 0.0;
            for (int i = 0; i < cfg.num_arms; ++i)
                worst = std::max(worst, std::abs(rs.global[i] - cfg.arm_means[i]));
            if (rs.t == cfg.burn_in) err_at_burn_in = worst;
            if (rs.t == cfg.horizon) err_at_end = worst;
        });
        sim.run();
        REQUIRE(err_at_burn_in >= 0.0);
        REQUIRE(err_at_end >= 0.0);
        if (err_at_end < err_at_burn_in) ++improved;
    }
    CHECK(improved >= 19);  // 95% of 20
}

TEST_CASE("approval is total after burn-in under honest majority") {
    ScenarioConfig cfg = make_preset("theorem1", 600, 4);
    cfg.commanders = {CommanderKind::AllSorted, 0, 0.05};
    Simulation sim(cfg, {false, false});
    bool all_approved = true;
    sim.set_observer([&](const RoundState& rs) {
        if (rs.t > cfg.burn_in && !rs.approved) all_approved = false;
    });
    sim.run();
    CHECK(all_approved);
}
