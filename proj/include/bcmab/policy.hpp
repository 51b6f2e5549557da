#pragma once

#include <cstdint>
#include <vector>

#include "bcmab/config.hpp"
#include "bcmab/crypto.hpp"
#include "bcmab/env.hpp"
#include "bcmab/rng.hpp"

namespace bcmab {

struct ParticipantState {
    int id = -1;
    bool malicious = false;
    KeyPair keys;
    std::vector<int64_t> pulls;        // n_{m,i}
    std::vector<double> local_mean;    // ȳμ_i^m
    std::vector<double> adopted_global;  // μ̃_i^m
    bool has_aggregated_global = false;  // received a non-placeholder estimate
    bool last_delivery_had_payload = false;

    // Contaminated running mean kept by epsilon-contamination attackers;
    // mirrors local_mean arithmetic with the contaminated reward stream.
    std::vector<double> contaminated_mean;

    ParticipantState() = default;
    ParticipantState(int id_, bool malicious_, const KeyPair& keys_, int num_arms)
        : id(id_), malicious(malicious_), keys(keys_),
          pulls(num_arms, 0), local_mean(num_arms, 0.0),
          adopted_global(num_arms, 0.0), contaminated_mean(num_arms, 0.0) {}
};

// Burn-in (t <= L, or no aggregated global estimate yet): round-robin
// t mod K. Learning phase: argmax of μ̃_i^m + (C1 ln t / n_i)^beta with
// ties broken toward the lowest arm index.
int select_arm_honest(const ParticipantState& state, int64_t t, const ScenarioConfig& cfg,
                      bool mpc_ready);

double ucb_score(double global_estimate, double c1, double beta, int64_t t, int64_t pulls);

int select_arm_malicious(const ParticipantState& state, const AttackProfile& profile,
                         int64_t t, const ScenarioConfig& cfg, bool mpc_ready,
                         RngStream& stream);

// What the participant sends to the validators this step, clamped to [0, 2].
std::vector<double> broadcast_estimators(const ParticipantState& state,
                                         const AttackProfile* profile,
                                         RngStream& stream);

void apply_delivery(ParticipantState& state, const Delivery& delivery, int arm,
                    const AttackProfile* profile, RngStream& attack_stream);

}  // namespace bcmab
