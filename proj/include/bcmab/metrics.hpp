#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcmab/config.hpp"

namespace bcmab {

struct StepRecord {
    int64_t t = 0;
    int approved = 0;
    double cost = 0.0;
    double mean_honest_reward = 0.0;  // raw, over honest participants
    double cumulative_regret = 0.0;
    int trusted_size = 0;   // |B_t|
    int blocklist_size = 0; // |D_t|
    int commander_index = -1;
};

struct RunSummary {
    double realized_regret = 0.0;   // R_T
    double pseudo_regret = 0.0;     // R̄_T (true means, realized arms)
    double honest_reward = 0.0;     // r_T
    double total_cost = 0.0;
    double approval_rate = 0.0;
    int64_t horizon = 0;
    std::vector<std::vector<int64_t>> pulls;  // per (participant, arm)
    std::vector<double> gaps;                 // Δ_i, zero-gap arms excluded = -1
};

// Accumulates the regret bookkeeping one step at a time. The per-arm
// counterfactual sums require reward draws for every arm at every honest
// participant; the environment supplies them.
class RegretLedger {
public:
    RegretLedger(const ScenarioConfig& cfg, bool keep_steps);

    void record_step(int64_t t, bool approved, double cost,
                     const std::vector<std::vector<double>>& honest_all_arm_rewards,
                     const std::vector<double>& raw_pulled_rewards,
                     const std::vector<int>& arms, int trusted_size, int blocklist_size,
                     int commander_index);

    RunSummary finalize() const;

    double realized_regret() const;
    double total_cost() const { return cost_sum_; }
    const std::vector<StepRecord>& steps() const { return steps_; }

    static std::string csv_header();
    static std::string csv_line(const StepRecord& r);
    std::string summary_json(const RunSummary& s) const;

private:
    const ScenarioConfig* cfg_;
    bool keep_steps_;
    int64_t last_t_ = 0;
    int64_t approvals_ = 0;
    double raw_reward_sum_ = 0.0;   // Σ honest raw rewards on approved steps
    double mean_reward_sum_ = 0.0;  // Σ μ_{a_m^t} over honest, approved steps
    double cost_sum_ = 0.0;
    std::vector<double> counterfactual_;  // per arm, honest-summed, approved steps
    std::vector<std::vector<int64_t>> pulls_;
    std::vector<StepRecord> steps_;
};

struct RegretDiagnostics {
    std::vector<double> ratios;       // R_T / ln T per horizon
    std::vector<double> increments;   // R_{2T} - R_T
    bool log_consistent = false;
    std::string verdict;              // "log-consistent" or "super-log"
};

// Needs at least 3 horizon points; stderrs (same length as points) widen the
// increment-monotonicity tolerance, defaulting to zero.
RegretDiagnostics regret_diagnostics(const std::vector<std::pair<int64_t, double>>& series,
                                     const std::vector<double>& stderrs = {});

}  // namespace bcmab
