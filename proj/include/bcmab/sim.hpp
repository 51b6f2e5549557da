#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "bcmab/aggregate.hpp"
#include "bcmab/config.hpp"
#include "bcmab/consensus.hpp"
#include "bcmab/contract.hpp"
#include "bcmab/crypto.hpp"
#include "bcmab/env.hpp"
#include "bcmab/metrics.hpp"
#include "bcmab/mpc.hpp"
#include "bcmab/policy.hpp"
#include "bcmab/select.hpp"

namespace bcmab {

// Per-step protocol artifacts, rebuilt each step and handed to the observer.
struct RoundState {
    int64_t t = 0;
    std::vector<int> validators;                       // S_V(t)
    std::vector<int> commanders;                       // S_C(t), sc_sort order
    std::map<int, std::vector<int>> filter_sets;       // A_t^j per honest validator
    TrustedSet trusted;                                // agreed B_t
    std::set<int> blocklist;                           // D_{t+1}
    std::vector<double> global;                        // μ̃(t)
    std::vector<double> hat;
    std::vector<int> safe_zone;                        // C_t when the rule computes it
    std::vector<std::vector<double>> broadcasts;
    std::vector<int> arms;
    std::vector<double> reputation_scores;
    bool consensus_agreed = false;
    bool approved = false;
    double cost_value = 0.0;    // mechanism value
    double cost_applied = 0.0;  // charged only when B_t has a malicious member
    ConsensusTranscript transcript;
};

struct SimOptions {
    bool keep_chain = true;
    bool keep_steps = true;
};

class Simulation {
public:
    explicit Simulation(ScenarioConfig cfg, SimOptions options = {});

    void set_observer(std::function<void(const RoundState&)> cb) { observer_ = std::move(cb); }

    RunSummary run();
    void step(int64_t t);

    const ScenarioConfig& config() const { return cfg_; }
    const Chain& chain() const { return chain_; }
    const RegretLedger& ledger() const { return ledger_; }
    const std::vector<ParticipantState>& participants() const { return participants_; }
    const std::vector<KeyPair>& keys() const { return keys_; }
    std::vector<uint64_t> public_keys() const;
    const Blocklist& blocklist() const { return blocklist_; }
    double constant_cost() const { return constant_cost_; }

private:
    RngStream& reward_stream(int id) { return streams_.at("reward/" + std::to_string(id)); }
    RngStream& attack_stream(int id) { return streams_.at("attack/" + std::to_string(id)); }

    ScenarioConfig cfg_;
    SimOptions options_;
    std::vector<KeyPair> keys_;
    std::map<std::string, RngStream> streams_;
    std::vector<ParticipantState> participants_;
    TrustCoefficients trust_;
    ReputationState reputation_;
    GlobalUpdateState gstate_;
    Blocklist blocklist_;
    Chain chain_;
    uint64_t head_digest_ = 0;
    int64_t chain_length_ = 0;
    RegretLedger ledger_;
    double constant_cost_ = 0.0;
    std::function<void(const RoundState&)> observer_;
    RoundState round_;  // reused buffer
};

}  // namespace bcmab
