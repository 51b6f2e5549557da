#include "bcmab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"

#include "bcmab/sim.hpp"

namespace bcmab {

ReplicaResult run_replica(const ReplicaSpec& spec, bool keep_steps, bool with_chain) {
    SimOptions options;
    options.keep_chain = with_chain;
    options.keep_steps = keep_steps;
    Simulation sim(spec.config, options);
    ReplicaResult res;
    res.horizon = spec.config.horizon;
    res.seed = spec.config.master_seed;
    size_t next_cp = 0;
    for (int64_t t = 1; t <= spec.config.horizon; ++t) {
        sim.step(t);
        if (next_cp < spec.checkpoints.size() && spec.checkpoints[next_cp] == t) {
            res.checkpoints.push_back(
                {t, sim.ledger().realized_regret(), sim.ledger().total_cost()});
            ++next_cp;
        }
    }
    res.summary = sim.ledger().finalize();
    if (keep_steps) {
        std::ostringstream csv;
        csv << RegretLedger::csv_header() << '\n';
        for (const auto& r : sim.ledger().steps()) csv << RegretLedger::csv_line(r) << '\n';
        res.csv = csv.str();
    }
    res.summary_json = sim.ledger().summary_json(res.summary);
    if (with_chain) {
        std::ostringstream chain;
        export_chain(chain, serialize_scenario(spec.config), sim.chain());
        res.chain_text = chain.str();
    }
    return res;
}

std::vector<ReplicaResult> run_replicas_serial(const std::vector<ReplicaSpec>& specs,
                                               bool keep_steps) {
    std::vector<ReplicaResult> out(specs.size());
    for (size_t i = 0; i < specs.size(); ++i) out[i] = run_replica(specs[i], keep_steps);
    return out;
}

std::vector<ReplicaResult> run_replicas_parallel(const std::vector<ReplicaSpec>& specs,
                                                 bool keep_steps, int jobs) {
    std::vector<ReplicaResult> out(specs.size());
#ifdef _OPENMP
    if (jobs > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(specs.size()); ++i)
            out[i] = run_replica(specs[i], keep_steps);
        return out;
    }
#else
    (void)jobs;
#endif
    for (size_t i = 0; i < specs.size(); ++i) out[i] = run_replica(specs[i], keep_steps);
    return out;
}

SweepReport build_sweep_report(const std::vector<ReplicaResult>& results) {
    std::map<int64_t, std::vector<double>> regret_by_horizon;
    std::map<int64_t, std::vector<double>> cost_by_horizon;
    for (const auto& r : results) {
        if (r.checkpoints.empty()) {
            regret_by_horizon[r.horizon].push_back(r.summary.realized_regret);
            cost_by_horizon[r.horizon].push_back(r.summary.total_cost);
        } else {
            for (const auto& cp : r.checkpoints) {
                regret_by_horizon[cp.t].push_back(cp.regret);
                cost_by_horizon[cp.t].push_back(cp.cost);
            }
        }
    }
    if (regret_by_horizon.size() < 3)
        throw std::invalid_argument("sweep needs at least 3 horizons");

    SweepReport report;
    std::vector<std::pair<int64_t, double>> series;
    std::vector<double> stderrs;
    for (const auto& [horizon, regrets] : regret_by_horizon) {
        if (regrets.size() < 5)
            throw std::invalid_argument("sweep needs at least 5 seeds per horizon");
        HorizonStats hs;
        hs.horizon = horizon;
        hs.seeds = static_cast<int>(regrets.size());
        double sum = 0.0;
        for (double r : regrets) sum += r;
        hs.mean_regret = sum / regrets.size();
        double var = 0.0;
        for (double r : regrets) var += (r - hs.mean_regret) * (r - hs.mean_regret);
        var /= regrets.size() > 1 ? regrets.size() - 1 : 1;
        hs.stderr_regret = std::sqrt(var / regrets.size());
        const auto& costs = cost_by_horizon[horizon];
        double cost_sum = 0.0;
        for (double c : costs) cost_sum += c;
        hs.mean_cost = cost_sum / costs.size();
        report.per_horizon.push_back(hs);
        series.emplace_back(horizon, hs.mean_regret);
        stderrs.push_back(hs.stderr_regret);
    }
    report.diagnostics = regret_diagnostics(series, stderrs);
    return report;
}

std::string sweep_report_json(const SweepReport& report) {
    nlohmann::json j;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& hs : report.per_horizon) {
        rows.push_back({{"horizon", hs.horizon},
                        {"mean_regret", hs.mean_regret},
                        {"stderr_regret", hs.stderr_regret},
                        {"mean_cost", hs.mean_cost},
                        {"seeds", hs.seeds}});
    }
    j["horizons"] = rows;
    j["ratios"] = report.diagnostics.ratios;
    j["increments"] = report.diagnostics.increments;
    j["verdict"] = report.diagnostics.verdict;
    return j.dump(2);
}

std::string sweep_report_text(const SweepReport& report) {
    std::ostringstream os;
    os << "horizon  seeds  mean_regret  stderr  regret/lnT  mean_cost\n";
    for (size_t i = 0; i < report.per_horizon.size(); ++i) {
        const auto& hs = report.per_horizon[i];
        char line[160];
        std::snprintf(line, sizeof line, "%7lld  %5d  %11.2f  %6.2f  %10.2f  %9.4f\n",
                      static_cast<long long>(hs.horizon), hs.seeds, hs.mean_regret,
                      hs.stderr_regret, report.diagnostics.ratios[i], hs.mean_cost);
        os << line;
    }
    os << "verdict: " << report.diagnostics.verdict << '\n';
    return os.str();
}

}  // namespace bcmab
