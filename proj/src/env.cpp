#include "bcmab/env.hpp"

#include <cmath>
#include <stdexcept>

namespace bcmab {

double ArmDistribution::draw(RngStream& stream) const {
    if (family.kind == ArmFamilyKind::Bernoulli) return stream.bernoulli(mean) ? 1.0 : 0.0;
    double sd = std::sqrt(family.sigma2);
    // Rejection keeps the draw in [0, 1]; with sd well inside the unit
    // interval the truncation bias on the mean is negligible.
    for (;;) {
        double x = stream.gaussian(mean, sd);
        if (x >= 0.0 && x <= 1.0) return x;
    }
}

namespace {
bool has_malicious(const std::vector<int>& ids, const ScenarioConfig& cfg) {
    for (int id : ids)
        if (cfg.is_malicious(id)) return true;
    return false;
}
}  // namespace

double compute_cost(const CostMechanism& mech, double constant_value,
                    const std::vector<double>& global,
                    const std::vector<double>& arm_means,
                    const std::vector<int>& trusted_union,
                    const ScenarioConfig& cfg) {
    if (mech.kind == CostKind::Constant)
        return has_malicious(trusted_union, cfg) ? constant_value : 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < arm_means.size(); ++i) {
        if (!std::isfinite(global[i]))
            throw SimInvariantError("distance cost on a non-finite global estimate");
        double d = std::abs(global[i] - arm_means[i]);
        double d3 = d * d * d;
        best = std::min(best, d3 * d3);
    }
    return best;
}

std::vector<Delivery> operate(const std::vector<double>& global,
                              bool global_from_aggregation,
                              const std::vector<int>& arms,
                              const std::vector<double>& raw_rewards,
                              const std::vector<int>& trusted_union,
                              bool block_approved, double cost,
                              const ScenarioConfig& cfg) {
    std::vector<Delivery> out(cfg.num_participants);
    for (int m = 0; m < cfg.num_participants; ++m) out[m].recipient = m;
    if (!block_approved) return out;  // Case 3: distribute nothing

    (void)arms;
    bool case2 = has_malicious(trusted_union, cfg);
    // raw_rewards is indexed per participant: the draw of the arm it pulled.
    for (int m = 0; m < cfg.num_participants; ++m) {
        Delivery& d = out[m];
        d.has_payload = true;
        d.global = global;
        d.global_from_aggregation = global_from_aggregation;
        d.cost_adjustment = case2 ? (cfg.is_malicious(m) ? cost : -cost) : 0.0;
        d.reward = raw_rewards[m] + d.cost_adjustment;
    }
    return out;
}

}  // namespace bcmab
