#include "bcmab/policy.hpp"

#include <algorithm>
#include <cmath>

namespace bcmab {

double ucb_score(double global_estimate, double c1, double beta, int64_t t, int64_t pulls) {
    double ratio = c1 * std::log(static_cast<double>(t)) / static_cast<double>(pulls);
    return global_estimate + std::pow(ratio, beta);
}

int select_arm_honest(const ParticipantState& state, int64_t t, const ScenarioConfig& cfg,
                      bool mpc_ready) {
    if (t <= cfg.burn_in || !mpc_ready)
        return static_cast<int>(t % cfg.num_arms);
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < cfg.num_arms; ++i) {
        if (state.pulls[i] == 0)
            throw SimInvariantError("unpulled arm after burn-in at participant " +
                                    std::to_string(state.id));
        double s = ucb_score(state.adopted_global[i], cfg.ucb_c1, cfg.ucb_beta, t, state.pulls[i]);
        if (s > best_score) {
            best_score = s;
            best = i;
        }
    }
    return best;
}

int select_arm_malicious(const ParticipantState& state, const AttackProfile& profile,
                         int64_t t, const ScenarioConfig& cfg, bool mpc_ready,
                         RngStream& stream) {
    switch (profile.arm.kind) {
        case ArmAttackKind::FixedArm: return profile.arm.fixed_arm;
        case ArmAttackKind::UniformRandom:
            return static_cast<int>(stream.uniform_int(cfg.num_arms));
        case ArmAttackKind::None: return select_arm_honest(state, t, cfg, mpc_ready);
    }
    return 0;
}

std::vector<double> broadcast_estimators(const ParticipantState& state,
                                         const AttackProfile* profile,
                                         RngStream& stream) {
    std::vector<double> out = state.local_mean;
    if (profile) {
        switch (profile->estimator.kind) {
            case EstimatorAttackKind::None: break;
            case EstimatorAttackKind::EpsilonContamination:
                out = state.contaminated_mean;
                break;
            case EstimatorAttackKind::ConstantShift:
                for (double& v : out) v += profile->estimator.shift;
                break;
            case EstimatorAttackKind::RandomNoise:
                for (double& v : out)
                    v += stream.uniform(-profile->estimator.range, profile->estimator.range);
                break;
            case EstimatorAttackKind::WorstArmBoost: {
                auto worst = std::min_element(out.begin(), out.end());
                *worst = 1.0;
                break;
            }
        }
    }
    for (double& v : out) v = std::clamp(v, 0.0, 2.0);
    return out;
}

void apply_delivery(ParticipantState& state, const Delivery& delivery, int arm,
                    const AttackProfile* profile, RngStream& attack_stream) {
    state.last_delivery_had_payload = delivery.has_payload;
    if (!delivery.has_payload) {
        // Counts and local means freeze; the global estimator falls back to
        // the participant's own local vector.
        state.adopted_global = state.local_mean;
        return;
    }
    double raw = delivery.raw_reward();
    int64_t n = ++state.pulls[arm];
    state.local_mean[arm] += (raw - state.local_mean[arm]) / static_cast<double>(n);
    if (profile && profile->estimator.kind == EstimatorAttackKind::EpsilonContamination) {
        double r = raw;
        if (attack_stream.bernoulli(profile->estimator.epsilon)) r = profile->estimator.q_value;
        state.contaminated_mean[arm] += (r - state.contaminated_mean[arm]) / static_cast<double>(n);
    }
    state.adopted_global = delivery.global;
    if (delivery.global_from_aggregation) state.has_aggregated_global = true;
}

}  // namespace bcmab
