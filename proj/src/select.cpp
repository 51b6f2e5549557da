#include "bcmab/select.hpp"

#include <algorithm>
#include <cmath>

#include "bcmab/contract.hpp"

namespace bcmab {

TrustCoefficients make_trust(const ScenarioConfig& cfg) {
    TrustCoefficients tc;
    tc.validator_prob.assign(cfg.num_participants, 1.0);
    tc.commander_prob.assign(cfg.num_participants, 1.0);
    if (cfg.commanders.kind == CommanderKind::WeightedVrf) {
        double t_horizon = static_cast<double>(cfg.horizon);
        double w_honest = 1.0 - std::log(t_horizon) / t_horizon;
        double denom = cfg.weight_denominator == WeightDenominator::BurnIn
                           ? static_cast<double>(cfg.burn_in)
                           : t_horizon;
        double mal = static_cast<double>(cfg.malicious_ids.size());
        double w_malicious =
            mal > 0.0 ? std::log(mal / cfg.commanders.eta) / denom : 0.0;
        for (int m = 0; m < cfg.num_participants; ++m)
            tc.commander_prob[m] = std::clamp(cfg.is_malicious(m) ? w_malicious : w_honest, 0.0, 1.0);
    }
    return tc;
}

bool selection(int64_t t, int participant, double prob, const KeyPair& kp,
               uint64_t round_seed) {
    uint64_t seed = hash_fields(round_seed, t, participant);
    VrfOutput out = vrf_eval(kp, seed);
    if (!vrf_verify(kp.pk, seed, out)) return false;
    if (prob <= 0.0) return false;
    if (prob >= 1.0) return true;
    // B(0,1,w) = 1 - w: selected iff hash/2^hl lands beyond that interval.
    auto threshold = static_cast<uint64_t>((1.0L - static_cast<long double>(prob)) *
                                           18446744073709551616.0L);
    return out.hash >= threshold;
}

ReputationState make_reputation(int num_participants) {
    ReputationState rs;
    rs.accuracy.assign(num_participants, 0.0);
    rs.score.assign(num_participants, 0.0);
    return rs;
}

void update_reputation(ReputationState& state,
                       const std::vector<std::vector<double>>& broadcasts,
                       const std::vector<double>& global,
                       const std::vector<std::vector<double>>& post_consensus,
                       double epsilon, ReputationForm form, ReputationMap map) {
    size_t m_count = broadcasts.size();
    size_t k_count = global.size();
    for (size_t m = 0; m < m_count; ++m) {
        double u = 0.0;
        for (size_t j = 0; j < k_count; ++j) {
            double est = broadcasts[m][j] - global[j];
            double post = post_consensus[m][j] - global[j];
            double penalty = form == ReputationForm::Body
                                 ? (post * post) * (post * post)
                                 : std::exp(post * post);
            u += -est * est - epsilon * epsilon * penalty;
        }
        state.accuracy[m] = u;
        state.score[m] = map == ReputationMap::Identity ? u : std::exp(u);
    }
}

std::vector<int> select_validators(const ScenarioConfig& cfg, const TrustCoefficients& trust,
                                   const ReputationState& reputation, int64_t t,
                                   const std::vector<KeyPair>& keys, uint64_t round_seed) {
    std::vector<int> out;
    switch (cfg.validators.kind) {
        case ValidatorKind::All:
            for (int m = 0; m < cfg.num_participants; ++m) out.push_back(m);
            break;
        case ValidatorKind::Vrf:
            for (int m = 0; m < cfg.num_participants; ++m)
                if (selection(t, m, trust.validator_prob[m], keys[m],
                              hash_fields(round_seed, uint64_t{0x5356})))
                    out.push_back(m);
            break;
        case ValidatorKind::ReputationTopN: {
            std::vector<int> ids(cfg.num_participants);
            for (int m = 0; m < cfg.num_participants; ++m) ids[m] = m;
            std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
                if (reputation.score[a] != reputation.score[b])
                    return reputation.score[a] > reputation.score[b];
                return a < b;
            });
            ids.resize(std::min<size_t>(ids.size(), cfg.validators.top_n));
            out = ids;
            break;
        }
    }
    return out;
}

std::vector<int> select_commanders(const ScenarioConfig& cfg, const std::vector<int>& validators,
                                   const TrustCoefficients& trust, int64_t t,
                                   const std::vector<KeyPair>& keys, uint64_t round_seed) {
    std::vector<int> sorted = sc_sort(validators, keys);
    switch (cfg.commanders.kind) {
        case CommanderKind::AllSorted:
            return sorted;
        case CommanderKind::FixedCount: {
            if (static_cast<int>(sorted.size()) > cfg.commanders.fixed_count)
                sorted.resize(cfg.commanders.fixed_count);
            return sorted;
        }
        case CommanderKind::WeightedVrf: {
            std::vector<int> out;
            for (int m : sorted)
                if (selection(t, m, trust.commander_prob[m], keys[m],
                              hash_fields(round_seed, uint64_t{0x5343})))
                    out.push_back(m);
            return out;
        }
    }
    return sorted;
}

}  // namespace bcmab
