#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcmab/config.hpp"
#include "bcmab/metrics.hpp"

namespace bcmab {

struct ReplicaSpec {
    ScenarioConfig config;  // horizon and seed already applied
    // Sorted prefix horizons at which to snapshot the running regret and
    // cost; a horizon sweep reads one trajectory per seed at these points so
    // the burn-in schedule stays identical across grid rows.
    std::vector<int64_t> checkpoints;
};

struct Checkpoint {
    int64_t t = 0;
    double regret = 0.0;
    double cost = 0.0;
};

struct ReplicaResult {
    int64_t horizon = 0;
    uint64_t seed = 0;
    RunSummary summary;
    std::vector<Checkpoint> checkpoints;
    std::string csv;           // per-step records (empty when not requested)
    std::string summary_json;
    std::string chain_text;    // canonical chain export (empty when not requested)
};

ReplicaResult run_replica(const ReplicaSpec& spec, bool keep_steps, bool export_chain = false);

// Serial reference: replicas in order, one thread.
std::vector<ReplicaResult> run_replicas_serial(const std::vector<ReplicaSpec>& specs,
                                               bool keep_steps);

// OpenMP over replicas; shared-nothing, results land in their slot, so the
// output is invariant to the parallelism degree.
std::vector<ReplicaResult> run_replicas_parallel(const std::vector<ReplicaSpec>& specs,
                                                 bool keep_steps, int jobs);

struct HorizonStats {
    int64_t horizon = 0;
    double mean_regret = 0.0;
    double stderr_regret = 0.0;
    double mean_cost = 0.0;
    int seeds = 0;
};

struct SweepReport {
    std::vector<HorizonStats> per_horizon;
    RegretDiagnostics diagnostics;
};

// Aggregates replica results over a horizon grid (>= 3 horizons, >= 5 seeds
// per horizon) and runs the log-scaling diagnostics.
SweepReport build_sweep_report(const std::vector<ReplicaResult>& results);

std::string sweep_report_json(const SweepReport& report);
std::string sweep_report_text(const SweepReport& report);

}  // namespace bcmab
