#pragma once

#include <vector>

#include "bcmab/config.hpp"
#include "bcmab/rng.hpp"

namespace bcmab {

struct ArmDistribution {
    double mean = 0.0;
    ArmFamily family;

    // i.i.d. draw in [0, 1], homogeneous across participants.
    double draw(RngStream& stream) const;
};

struct Delivery {
    int recipient = -1;
    bool has_payload = false;          // false iff b_t = 0
    double reward = 0.0;               // cost-adjusted
    double cost_adjustment = 0.0;      // reward = raw + cost_adjustment
    std::vector<double> global;        // μ̃(t)
    bool global_from_aggregation = false;

    double raw_reward() const { return reward - cost_adjustment; }
};

// Value of the cost mechanism at this step (b_t = 1 assumed). Constant cost
// is gated on malicious membership in the trusted union; distance-based is
// the raw min_i |μ̃_i - μ_i|^6.
double compute_cost(const CostMechanism& mech, double constant_value,
                    const std::vector<double>& global,
                    const std::vector<double>& arm_means,
                    const std::vector<int>& trusted_union,
                    const ScenarioConfig& cfg);

// Reward distribution cases:
//   1. b=1, trusted set all honest: everyone gets its raw reward.
//   2. b=1, trusted set has a malicious member: honest get r - c, malicious r + c.
//   3. b=0: nothing.
std::vector<Delivery> operate(const std::vector<double>& global,
                              bool global_from_aggregation,
                              const std::vector<int>& arms,
                              const std::vector<double>& raw_rewards,
                              const std::vector<int>& trusted_union,
                              bool block_approved, double cost,
                              const ScenarioConfig& cfg);

}  // namespace bcmab
