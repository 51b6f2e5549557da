#include "bcmab/presets.hpp"

#include <cmath>

namespace bcmab {

namespace {

ScenarioConfig base_config(int num_arms, int64_t horizon, int num_participants, uint64_t seed) {
    ScenarioConfig cfg;
    cfg.num_arms = num_arms;
    cfg.horizon = horizon;
    cfg.num_participants = num_participants;
    cfg.master_seed = seed;
    cfg.arm_means = {0.9, 0.75, 0.6, 0.45, 0.3};  // gaps >= 0.15
    cfg.arm_means.resize(num_arms);
    cfg.burn_in = default_burn_in(num_arms, horizon, cfg.burn_in_multiplier);
    cfg.sig_len = 16;
    return cfg;
}

void set_roles(ScenarioConfig& cfg, int num_honest) {
    cfg.honest_ids.clear();
    cfg.malicious_ids.clear();
    for (int m = 0; m < cfg.num_participants; ++m)
        (m < num_honest ? cfg.honest_ids : cfg.malicious_ids).push_back(m);
}

AttackProfile shift_attacker(double shift, VotePolicy vote = VotePolicy::AlwaysZero) {
    AttackProfile p;
    p.estimator.kind = EstimatorAttackKind::ConstantShift;
    p.estimator.shift = shift;
    p.vote = vote;
    return p;
}

AttackProfile contamination_attacker(double eps, double q, VotePolicy vote = VotePolicy::AlwaysZero) {
    AttackProfile p;
    p.estimator.kind = EstimatorAttackKind::EpsilonContamination;
    p.estimator.epsilon = eps;
    p.estimator.q_value = q;
    p.vote = vote;
    return p;
}

AttackProfile equivocator() {
    AttackProfile p;
    p.consensus = ConsensusAttackKind::Equivocate;
    p.vote = VotePolicy::AlwaysZero;
    return p;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"no-attack", "theorem1", "theorem2", "theorem3", "theorem4",
            "theorem5", "theorem6", "theorem7"};
}

void check_regime_assumptions(const std::string& name, const ScenarioConfig& cfg) {
    const int m = cfg.num_participants;
    const int honest = static_cast<int>(cfg.honest_ids.size());
    int estimator_attackers = 0, consensus_attackers = 0, both = 0;
    for (const auto& [id, p] : cfg.attacks) {
        if (p.attacks_estimators()) ++estimator_attackers;
        if (p.attacks_consensus()) ++consensus_attackers;
        if (p.attacks_estimators() && p.attacks_consensus()) ++both;
    }
    auto require = [&](bool ok, const std::string& what) {
        if (!ok) throw ConfigError(name + " preset requires " + what);
    };
    if (name == "no-attack") {
        require(cfg.malicious_ids.empty(), "no malicious participants");
    } else if (name == "theorem1") {
        require(static_cast<int>(cfg.malicious_ids.size()) <= m / 3,
                "|malicious| <= floor(M/3)");
    } else if (name == "theorem2") {
        require(2 * honest >= m, "at least M/2 honest participants");
    } else if (name == "theorem3") {
        require(4 * honest >= m, "at least M/4 honest participants");
        require(estimator_attackers < honest - 1, "M_A^1 < M_H - 1");
        require(2 * consensus_attackers < m - 2, "M_A^2 < M/2 - 1");
    } else if (name == "theorem4" || name == "theorem5" || name == "theorem6" ||
               name == "theorem7") {
        require(2 * estimator_attackers < m - 2, "M_A^1 < M/2 - 1");
        require(2 * consensus_attackers < m - 2, "M_A^2 < M/2 - 1");
        require(both == 0, "consensus attackers that leave the estimators alone");
        if (name == "theorem5")
            require(cfg.commanders.kind == CommanderKind::WeightedVrf,
                    "weighted commander sortition");
        if (name == "theorem6" || name == "theorem7")
            require(cfg.epsilon > 0.0, "a positive safe-zone epsilon");
        if (name == "theorem7")
            require(cfg.validators.kind == ValidatorKind::ReputationTopN,
                    "reputation-ranked validator selection");
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
}

ScenarioConfig make_preset(const std::string& name, int64_t horizon, uint64_t seed) {
    if (name == "no-attack") {
        ScenarioConfig cfg = base_config(5, horizon, 4, seed);
        set_roles(cfg, 4);
        cfg.f_known = 0;
        cfg.preset = name;
        validate_scenario(cfg);
        check_regime_assumptions(name, cfg);
        return cfg;
    }
    if (name == "theorem1") {
        // M_A <= M/3, floor(M/3)+1 commanders, constant cost, Option 1,
        // halving update, beta = 1/2.
        ScenarioConfig cfg = base_config(5, horizon, 12, seed);
        set_roles(cfg, 9);
        // A full-unit shift pins every attacker value at or above 1.0 while
        // honest local means stay within [0,1]; with attacker ids sorting
        // last on ties, the top-f trim removes exactly the attackers.
        for (int id : cfg.malicious_ids) cfg.attacks[id] = shift_attacker(1.0);
        cfg.f_known = static_cast<int>(cfg.malicious_ids.size());
        cfg.aggregation = AggregationOption::Option1;
        cfg.update_rule = UpdateRule::Halving;
        cfg.cost = {CostKind::Constant, std::nullopt};
        cfg.ucb_beta = 0.5;
        cfg.ucb_c1 = 1.0;
        cfg.commanders = {CommanderKind::FixedCount, cfg.num_participants / 3 + 1, 0.05};
        cfg.preset = name;
        validate_scenario(cfg);
        check_regime_assumptions(name, cfg);
        return cfg;
    }
    if (name == "theorem2") {
        // M_A below M/2, floor(M/2)+1 commanders, distance cost, Option 2,
        // contraction update, beta = 1/6. Attackers shift inside the honest
        // noise band so they keep slipping through the trim. The wider gaps
        // and small C1 let the 1/6-exponent exploration saturate within the
        // burn-in pull counts at desk-scale horizons.
        ScenarioConfig cfg = base_config(5, horizon, 12, seed);
        cfg.arm_means = {0.9, 0.6, 0.45, 0.3, 0.15};
        set_roles(cfg, 7);
        for (int id : cfg.malicious_ids) cfg.attacks[id] = shift_attacker(0.06);
        cfg.f_known = static_cast<int>(cfg.malicious_ids.size());  // 5
        cfg.aggregation = AggregationOption::Option2;
        cfg.update_rule = UpdateRule::Contraction;
        cfg.cost = {CostKind::DistanceBased, std::nullopt};
        cfg.ucb_beta = 1.0 / 6.0;
        cfg.ucb_c1 = 5e-5;
        cfg.commanders = {CommanderKind::FixedCount, cfg.num_participants / 2 + 1, 0.05};
        cfg.preset = name;
        validate_scenario(cfg);
        check_regime_assumptions(name, cfg);
        return cfg;
    }
    if (name == "theorem3") {
        // M_H >= M/4 with M_A^1 < M_H - 1 and M_A^2 < M/2 - 1; Option 3 with
        // the blocklist, all commanders each step.
        ScenarioConfig cfg = base_config(5, horizon, 8, seed);
        set_roles(cfg, 5);
        cfg.attacks[5] = shift_attacker(0.5);
        cfg.attacks[6] = equivocator();
        cfg.attacks[7] = equivocator();
        cfg.f_known = 3;
        cfg.aggregation = AggregationOption::Option3;
        cfg.update_rule = UpdateRule::Contraction;
        cfg.cost = {CostKind::DistanceBased, std::nullopt};
        cfg.ucb_beta = 1.0 / 6.0;
        cfg.ucb_c1 = 2e-4;
        cfg.commanders = {CommanderKind::AllSorted, 0, 0.05};
        cfg.consensus_full_iteration = true;
        cfg.preset = name;
        validate_scenario(cfg);
        check_regime_assumptions(name, cfg);
        return cfg;
    }
    if (name == "theorem4") {
        // Any M_A with M_A^1 < M/2 - 1 and M_A^2 < M/2 - 1, consensus
        // attackers never touching the estimators. Estimator attackers follow
        // the consensus protocol, so f reduces to |M_A^1|.
        ScenarioConfig cfg = base_config(5, horizon, 10, seed);
        set_roles(cfg, 4);
        cfg.attacks[4] = shift_attacker(0.5, VotePolicy::FollowProtocol);
        cfg.attacks[5] = shift_attacker(0.5, VotePolicy::FollowProtocol);
        cfg.attacks[6] = shift_attacker(0.5, VotePolicy::FollowProtocol);
        cfg.attacks[7] = equivocator();
        cfg.attacks[8] = equivocator();
        cfg.attacks[9] = equivocator();
        cfg.f_known = 3;
        cfg.aggregation = AggregationOption::Option2;
        cfg.update_rule = UpdateRule::Contraction;
        cfg.cost = {CostKind::DistanceBased, std::nullopt};
        cfg.ucb_beta = 1.0 / 6.0;
        cfg.ucb_c1 = 2e-4;
        cfg.commanders = {CommanderKind::AllSorted, 0, 0.05};
        cfg.preset = name;
        validate_scenario(cfg);
        check_regime_assumptions(name, cfg);
        return cfg;
    }
    if (name == "theorem5") {
        // Weighted commander sortition: honest w = 1 - ln T / T, malicious
        // w = ln(|M_A|/eta) / L.
        ScenarioConfig cfg = base_config(5, horizon, 10, seed);
        set_roles(cfg, 6);
        cfg.attacks[6] = shift_attacker(0.5);
        cfg.attacks[7] = shift_attacker(0.5);
        cfg.attacks[8] = equivocator();
        cfg.attacks[9] = equivocator();
        cfg.f_known = 2;
        cfg.aggregation = AggregationOption::Option3;
        cfg.update_rule = UpdateRule::Contraction;
        cfg.cost = {CostKind::DistanceBased, std::nullopt};
        cfg.ucb_beta = 1.0 / 6.0;
        cfg.ucb_c1 = 2e-4;
        cfg.commanders = {CommanderKind::WeightedVrf, 0, 0.05};
        cfg.preset = name;
        validate_scenario(cfg);
        check_regime_assumptions(name, cfg);
        return cfg;
    }
    if (name == "theorem6") {
        // Pre-fixed epsilon-safe zone: contamination attackers sit outside
        // the zone, the C_t filter drops them, constant cost.
        ScenarioConfig cfg = base_config(5, horizon, 10, seed);
        cfg.arm_means = {0.3, 0.4, 0.5, 0.6, 0.7};
        set_roles(cfg, 6);
        cfg.attacks[6] = contamination_attacker(0.3, 1.0);
        cfg.attacks[7] = contamination_attacker(0.3, 1.0);
        cfg.attacks[8] = contamination_attacker(0.3, 1.0);
        cfg.attacks[9] = equivocator();
        cfg.f_known = 3;
        cfg.aggregation = AggregationOption::Option2;
        cfg.update_rule = UpdateRule::SafeZone;
        cfg.cost = {CostKind::Constant, std::nullopt};
        cfg.epsilon = 0.2;
        cfg.family = {ArmFamilyKind::TruncatedGaussian, 0.0025};
        cfg.ucb_beta = 1.0 / 6.0;
        cfg.ucb_c1 = 2e-4;
        cfg.commanders = {CommanderKind::AllSorted, 0, 0.05};
        cfg.preset = name;
        validate_scenario(cfg);
        check_regime_assumptions(name, cfg);
        return cfg;
    }
    if (name == "theorem7") {
        // Reputation-ranked validator selection with N = M_H on top of the
        // theorem6 regime.
        ScenarioConfig cfg = make_preset("theorem6", horizon, seed);
        cfg.validators = {ValidatorKind::ReputationTopN, 6};
        cfg.preset = name;
        validate_scenario(cfg);
        check_regime_assumptions(name, cfg);
        return cfg;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace bcmab
