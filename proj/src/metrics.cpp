#include "bcmab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace bcmab {

RegretLedger::RegretLedger(const ScenarioConfig& cfg, bool keep_steps)
    : cfg_(&cfg), keep_steps_(keep_steps), counterfactual_(cfg.num_arms, 0.0),
      pulls_(cfg.num_participants, std::vector<int64_t>(cfg.num_arms, 0)) {}

void RegretLedger::record_step(int64_t t, bool approved, double cost,
                               const std::vector<std::vector<double>>& honest_all_arm_rewards,
                               const std::vector<double>& raw_pulled_rewards,
                               const std::vector<int>& arms, int trusted_size,
                               int blocklist_size, int commander_index) {
    if (t != last_t_ + 1) throw SimInvariantError("ledger steps recorded out of order");
    last_t_ = t;

    double honest_raw = 0.0;
    if (approved) {
        ++approvals_;
        cost_sum_ += cost;
        size_t h = 0;
        for (int id : cfg_->honest_ids) {
            for (int i = 0; i < cfg_->num_arms; ++i)
                counterfactual_[i] += honest_all_arm_rewards[h][i];
            honest_raw += raw_pulled_rewards[id];
            mean_reward_sum_ += cfg_->arm_means[arms[id]];
            ++h;
        }
        raw_reward_sum_ += honest_raw;
        for (int m = 0; m < cfg_->num_participants; ++m) pulls_[m][arms[m]]++;
    }

    if (keep_steps_) {
        StepRecord r;
        r.t = t;
        r.approved = approved ? 1 : 0;
        r.cost = approved ? cost : 0.0;
        r.mean_honest_reward =
            approved && !cfg_->honest_ids.empty()
                ? honest_raw / static_cast<double>(cfg_->honest_ids.size())
                : 0.0;
        r.cumulative_regret = realized_regret();
        r.trusted_size = trusted_size;
        r.blocklist_size = blocklist_size;
        r.commander_index = commander_index;
        steps_.push_back(r);
    }
}

double RegretLedger::realized_regret() const {
    double best = 0.0;
    for (double v : counterfactual_) best = std::max(best, v);
    double r_t = raw_reward_sum_ - cost_sum_;
    return best - r_t;
}

RunSummary RegretLedger::finalize() const {
    RunSummary s;
    s.horizon = last_t_;
    s.honest_reward = raw_reward_sum_ - cost_sum_;
    s.total_cost = cost_sum_;
    s.realized_regret = realized_regret();
    double best_mean = *std::max_element(cfg_->arm_means.begin(), cfg_->arm_means.end());
    double optimal = best_mean * static_cast<double>(last_t_) *
                     static_cast<double>(cfg_->honest_ids.size());
    s.pseudo_regret = optimal - (mean_reward_sum_ - cost_sum_);
    s.approval_rate = last_t_ > 0 ? static_cast<double>(approvals_) / last_t_ : 0.0;
    s.pulls = pulls_;
    s.gaps.resize(cfg_->num_arms);
    for (int i = 0; i < cfg_->num_arms; ++i) {
        double gap = best_mean - cfg_->arm_means[i];
        s.gaps[i] = gap == 0.0 ? -1.0 : gap;  // zero-gap arms excluded from diagnostics
    }
    return s;
}

std::string RegretLedger::csv_header() {
    return "t,b,c,mean_honest_reward,cumulative_regret,trusted_size,blocklist_size,commander_index";
}

std::string RegretLedger::csv_line(const StepRecord& r) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%lld,%d,%.10g,%.10g,%.10g,%d,%d,%d",
                  static_cast<long long>(r.t), r.approved, r.cost, r.mean_honest_reward,
                  r.cumulative_regret, r.trusted_size, r.blocklist_size, r.commander_index);
    return buf;
}

std::string RegretLedger::summary_json(const RunSummary& s) const {
    nlohmann::json j;
    j["horizon"] = s.horizon;
    j["realized_regret"] = s.realized_regret;
    j["pseudo_regret"] = s.pseudo_regret;
    j["honest_reward"] = s.honest_reward;
    j["total_cost"] = s.total_cost;
    j["approval_rate"] = s.approval_rate;
    j["pulls"] = s.pulls;
    j["gaps"] = s.gaps;
    j["seed"] = cfg_->master_seed;
    return j.dump(2);
}

RegretDiagnostics regret_diagnostics(const std::vector<std::pair<int64_t, double>>& series,
                                     const std::vector<double>& stderrs) {
    if (series.size() < 3)
        throw std::invalid_argument("regret diagnostics need at least 3 horizon points");
    RegretDiagnostics d;
    for (const auto& [t, r] : series) d.ratios.push_back(r / std::log(static_cast<double>(t)));
    for (size_t k = 1; k < series.size(); ++k)
        d.increments.push_back(series[k].second - series[k - 1].second);

    double last = d.ratios.back();
    double prev = d.ratios[d.ratios.size() - 2];
    bool ratio_ok = prev != 0.0 && std::abs(last / prev - 1.0) <= 0.25;

    bool increments_ok = true;
    for (size_t k = 1; k < d.increments.size(); ++k) {
        double tol = 0.0;
        if (stderrs.size() == series.size()) {
            double a = stderrs[k], b = stderrs[k + 1];
            tol = std::sqrt(a * a + b * b);
        }
        // round-off slack keeps exactly-logarithmic series classified right
        tol = std::max(tol, 1e-9 * std::abs(d.increments[k - 1]));
        if (d.increments[k] > d.increments[k - 1] + tol) increments_ok = false;
    }
    d.log_consistent = ratio_ok && increments_ok;
    d.verdict = d.log_consistent ? "log-consistent" : "super-log";
    return d;
}

}  // namespace bcmab
