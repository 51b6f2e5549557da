#include "bcmab/sim.hpp"

#include <algorithm>
#include <cmath>

namespace bcmab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr uint64_t kRoundTag = 0x726F756E64;  // "round"
constexpr uint64_t kSeedTag = 0x71;           // "q"
constexpr uint64_t kNonceTag = 0x6E6F;        // "no"
}  // namespace

Simulation::Simulation(ScenarioConfig cfg, SimOptions options)
    : cfg_(std::move(cfg)), options_(options),
      ledger_(cfg_, options.keep_steps) {
    validate_scenario(cfg_);

    std::vector<std::string> stream_ids = {"environment", "selection", "consensus"};
    for (int m = 0; m < cfg_.num_participants; ++m) {
        stream_ids.push_back("reward/" + std::to_string(m));
        stream_ids.push_back("attack/" + std::to_string(m));
    }
    streams_ = derive_streams(cfg_.master_seed, stream_ids);

    keys_.reserve(cfg_.num_participants);
    participants_.reserve(cfg_.num_participants);
    for (int m = 0; m < cfg_.num_participants; ++m) {
        uint64_t q_m = hash_fields(cfg_.master_seed, kSeedTag, m);
        keys_.push_back(keygen(q_m));
        participants_.emplace_back(m, cfg_.is_malicious(m), keys_[m], cfg_.num_arms);
    }

    trust_ = make_trust(cfg_);
    reputation_ = make_reputation(cfg_.num_participants);
    gstate_ = GlobalUpdateState(cfg_.num_arms);

    // The environment fixes the constant cost once per run unless pinned.
    constant_cost_ = cfg_.cost.constant_value
                         ? *cfg_.cost.constant_value
                         : streams_.at("environment").uniform(0.0, 1.0);
}

std::vector<uint64_t> Simulation::public_keys() const {
    std::vector<uint64_t> pks;
    pks.reserve(keys_.size());
    for (const auto& kp : keys_) pks.push_back(kp.pk);
    return pks;
}

void Simulation::step(int64_t t) {
    const int M = cfg_.num_participants;
    const int K = cfg_.num_arms;
    const std::vector<uint64_t> pks = public_keys();
    uint64_t round_seed = hash_fields(cfg_.master_seed, kRoundTag, t);

    RoundState& rs = round_;
    rs = RoundState{};
    rs.t = t;

    // Validator and commander selection.
    rs.validators = select_validators(cfg_, trust_, reputation_, t, keys_, round_seed);
    std::vector<int> validators_sorted = sc_sort(rs.validators, keys_);
    rs.commanders = select_commanders(cfg_, rs.validators, trust_, t, keys_, round_seed);

    // Arm selection and reward draws. The environment draws the full arm
    // vector for honest participants so the realized best-arm sum is defined.
    rs.arms.assign(M, 0);
    std::vector<double> raw_pulled(M, 0.0);
    std::vector<std::vector<double>> honest_rewards_all;
    honest_rewards_all.reserve(cfg_.honest_ids.size());
    for (int m = 0; m < M; ++m) {
        ParticipantState& st = participants_[m];
        const AttackProfile* profile = cfg_.profile(m);
        bool ready = st.has_aggregated_global;
        if (profile)
            rs.arms[m] = select_arm_malicious(st, *profile, t, cfg_, ready, attack_stream(m));
        else
            rs.arms[m] = select_arm_honest(st, t, cfg_, ready);
    }
    for (int id : cfg_.honest_ids) {
        std::vector<double> draws(K);
        for (int i = 0; i < K; ++i)
            draws[i] = ArmDistribution{cfg_.arm_means[i], cfg_.family}.draw(reward_stream(id));
        raw_pulled[id] = draws[rs.arms[id]];
        honest_rewards_all.push_back(std::move(draws));
    }
    for (int id : cfg_.malicious_ids) {
        raw_pulled[id] =
            ArmDistribution{cfg_.arm_means[rs.arms[id]], cfg_.family}.draw(reward_stream(id));
    }

    // Broadcasting.
    rs.broadcasts.resize(M);
    for (int m = 0; m < M; ++m)
        rs.broadcasts[m] = broadcast_estimators(participants_[m], cfg_.profile(m), attack_stream(m));

    // Aggregation: every validator computes its own filter and trusted set.
    std::vector<std::vector<int64_t>> reported(M, std::vector<int64_t>(K, 0));
    for (int m = 0; m < M; ++m) {
        const AttackProfile* profile = cfg_.profile(m);
        if (profile && profile->count_report == CountReportKind::ConstantOverride)
            reported[m].assign(K, static_cast<int64_t>(profile->count_override));
        else
            reported[m] = participants_[m].pulls;
    }
    ComparisonOracle oracle(std::move(reported), K, cfg_.burn_in);

    std::map<int, std::string> proposals;
    std::map<std::string, TrustedSet> by_payload;
    std::map<std::vector<int>, std::string> by_filter;  // validators usually share A_t
    for (int v : validators_sorted) {
        std::vector<int> filter = build_filter_set(v, t, oracle, M, cfg_.burn_in);
        auto cached = by_filter.find(filter);
        if (cached == by_filter.end()) {
            TrustedSet ts = build_trusted_set(cfg_.aggregation, filter, rs.broadcasts,
                                              cfg_.f_known, t, cfg_.burn_in, blocklist_.ids, K);
            std::string payload = serialize_trusted_set(ts);
            by_payload.emplace(payload, std::move(ts));
            cached = by_filter.emplace(filter, std::move(payload)).first;
        }
        proposals[v] = cached->second;
        if (!cfg_.is_malicious(v)) rs.filter_sets[v] = std::move(filter);
    }

    // Consensus.
    std::map<int, ValidatorBehavior> behaviors;
    for (int v : validators_sorted) {
        const AttackProfile* profile = cfg_.profile(v);
        if (profile)
            behaviors[v] = {profile->consensus, profile->vote == VotePolicy::FollowProtocol};
        else
            behaviors[v] = {ConsensusAttackKind::None, true};
    }
    std::map<int, uint64_t> sks;
    for (int v : validators_sorted) sks[v] = keys_[v].sk;

    bool ran_consensus = !rs.commanders.empty() && !validators_sorted.empty();
    if (ran_consensus) {
        rs.transcript = run_consensus(rs.commanders, proposals, validators_sorted, behaviors,
                                      pks, sks, RelayPolicy{}, cfg_.consensus_full_iteration,
                                      cfg_.forge_prob, streams_.at("consensus"));
        blocklist_ = update_blocklist(blocklist_, rs.transcript.evidence, pks);
    }
    rs.blocklist = blocklist_.ids;
    rs.consensus_agreed = ran_consensus && rs.transcript.agreed;

    // Global update and block verification.
    GlobalEstimate ge;
    bool approved = false;
    if (rs.consensus_agreed) {
        auto it = by_payload.find(rs.transcript.agreed_payload);
        rs.trusted = it != by_payload.end() ? it->second
                                            : parse_trusted_set(rs.transcript.agreed_payload);
        ge = global_update(cfg_.update_rule, rs.trusted, gstate_, t, cfg_.epsilon,
                           rs.broadcasts, K);
        approved = sc_block_verify(ge);
    } else {
        rs.trusted.per_arm.assign(K, {});
        ge.values.assign(K, kInf);
        ge.hat.assign(K, kInf);
        ge.hathat.assign(K, kInf);
        ge.tau = gstate_.tau;
    }
    rs.approved = approved;
    rs.global = ge.values;
    rs.hat = ge.hat;
    rs.safe_zone = ge.safe_zone;

    // Cost mechanism and reward distribution.
    bool case2 = false;
    for (int id : rs.trusted.member_union)
        if (cfg_.is_malicious(id)) case2 = true;
    if (approved) {
        rs.cost_value = compute_cost(cfg_.cost, constant_cost_, ge.values, cfg_.arm_means,
                                     rs.trusted.member_union, cfg_);
        rs.cost_applied = case2 ? rs.cost_value : 0.0;
    }
    std::vector<Delivery> deliveries =
        operate(ge.values, ge.from_aggregation, rs.arms, raw_pulled, rs.trusted.member_union,
                approved, rs.cost_applied, cfg_);
    for (int m = 0; m < M; ++m)
        apply_delivery(participants_[m], deliveries[m], rs.arms[m], cfg_.profile(m),
                       attack_stream(m));
    if (approved) gstate_.commit(ge, t);

    // Reputation bookkeeping: only approved steps carrying a real aggregated
    // estimate. Scoring broadcasts against the burn-in placeholder would rank
    // participants on single-draw noise, and under top-N selection one bad
    // early ranking can wedge the validator set permanently.
    bool all_finite = approved && ge.from_aggregation;
    for (double v : ge.values)
        if (!std::isfinite(v)) all_finite = false;
    if (all_finite) {
        std::vector<std::vector<double>> post(M);
        for (int m = 0; m < M; ++m) {
            post[m] = ge.values;
            const AttackProfile* profile = cfg_.profile(m);
            if (profile && profile->attacks_consensus())
                for (double& v : post[m]) v += 1.0;  // the alternate payload it circulated
        }
        update_reputation(reputation_, rs.broadcasts, ge.values, post, cfg_.epsilon,
                          cfg_.reputation_form, cfg_.reputation_map);
    }
    rs.reputation_scores = reputation_.score;

    // Ledger and chain.
    ledger_.record_step(t, approved, rs.cost_applied, honest_rewards_all, raw_pulled, rs.arms,
                        static_cast<int>(rs.trusted.member_union.size()),
                        static_cast<int>(blocklist_.ids.size()),
                        ran_consensus ? rs.transcript.deciding_commander_index : -1);

    if (options_.keep_chain) {
        Block block;
        block.index = t - 1;
        block.prev_digest = chain_.head_digest();
        block.approved = approved ? 1 : 0;
        block.global = ge.values;
        block.arms = rs.arms;
        block.cost = rs.cost_applied;
        block.transcript = ran_consensus ? transcript_digest(rs.transcript) : 0;
        block.trusted = rs.trusted;
        block.estimators.reserve(M);
        for (int m = 0; m < M; ++m) {
            SignedEstimator e;
            e.id = m;
            e.values = rs.broadcasts[m];
            e.sig = sign(keys_[m].sk, estimator_bytes(block.index, m, e.values));
            block.estimators.push_back(std::move(e));
        }
        block.count_commitments.reserve(static_cast<size_t>(M) * K);
        for (int m = 0; m < M; ++m)
            for (int i = 0; i < K; ++i) {
                uint64_t nonce = hash_fields(keys_[m].sk, kNonceTag, t, i);
                block.count_commitments.push_back(
                    commit(static_cast<uint64_t>(participants_[m].pulls[i]), nonce));
            }
        if (approved)
            for (int id : cfg_.honest_ids)
                block.honest_rewards.push_back({id, raw_pulled[id]});
        chain_.append(std::move(block));
    }

    if (observer_) observer_(rs);
}

RunSummary Simulation::run() {
    for (int64_t t = 1; t <= cfg_.horizon; ++t) step(t);
    return ledger_.finalize();
}

}  // namespace bcmab
