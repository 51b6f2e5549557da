#pragma once

#include <cstdint>
#include <vector>

#include "bcmab/config.hpp"
#include "bcmab/crypto.hpp"

namespace bcmab {

struct TrustCoefficients {
    std::vector<double> validator_prob;  // p_m(t), initialized to 1
    std::vector<double> commander_prob;  // w_m(t), initialized to 1
};

// Time-invariant trust per the weighted commander-selection regime: honest
// w = 1 - ln T / T, malicious w = ln(|M_A| / eta) / denom, clamped to [0, 1].
TrustCoefficients make_trust(const ScenarioConfig& cfg);

// VRF sortition: selected iff hash / 2^hl falls outside [0, 1 - prob];
// returns false when the proof fails verification.
bool selection(int64_t t, int participant, double prob, const KeyPair& kp,
               uint64_t round_seed);

struct ReputationState {
    std::vector<double> accuracy;  // U_i^t
    std::vector<double> score;     // RS_i^t = G(U_i^t)
};

ReputationState make_reputation(int num_participants);

// U_i = sum_j [ -(broadcast_ij - global_j)^2 - eps^2 * penalty(delta_ij - global_j) ]
// with the body form penalty x -> (x^2)^2 and the appendix form x -> e^{x^2}.
void update_reputation(ReputationState& state,
                       const std::vector<std::vector<double>>& broadcasts,
                       const std::vector<double>& global,
                       const std::vector<std::vector<double>>& post_consensus,
                       double epsilon, ReputationForm form, ReputationMap map);

std::vector<int> select_validators(const ScenarioConfig& cfg, const TrustCoefficients& trust,
                                   const ReputationState& reputation, int64_t t,
                                   const std::vector<KeyPair>& keys, uint64_t round_seed);

// Ordered by sc_sort; the ordering function is supplied by the contract
// module to keep the public-key total order in one place.
std::vector<int> select_commanders(const ScenarioConfig& cfg, const std::vector<int>& validators,
                                   const TrustCoefficients& trust, int64_t t,
                                   const std::vector<KeyPair>& keys, uint64_t round_seed);

}  // namespace bcmab
