#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bcmab/aggregate.hpp"
#include "bcmab/config.hpp"
#include "bcmab/crypto.hpp"
#include "bcmab/rng.hpp"

namespace bcmab {

// DEFAULT value of SM(m): the empty payload. Real proposals are never empty.
inline const std::string kDefaultValue;

struct RelayPolicy {
    int m_relay = 0;  // max signature-chain length; 0 = |validators| - 1
};

struct ValidatorBehavior {
    ConsensusAttackKind attack = ConsensusAttackKind::None;
    bool protocol_vote = true;  // vote per the rule; false = always 0
};

struct SmResult {
    std::map<int, std::string> derived;  // per validator
    std::vector<EquivocationEvidence> evidence;
    int messages = 0;
};

// Lamport signed-message broadcast with one commander. With forge_prob = 0:
// all honest validators derive the same value (IC1), and an honest
// commander's proposal is that value (IC2).
SmResult run_sm(int commander, const std::string& proposal,
                const std::vector<int>& validators,
                const std::map<int, ValidatorBehavior>& behaviors,
                const std::vector<uint64_t>& pk_by_id,
                const std::map<int, uint64_t>& sk_by_id,
                RelayPolicy policy, double forge_prob, RngStream& stream);

struct CommanderRound {
    int commander = -1;
    std::map<int, uint64_t> derived_digest;  // per-validator B~_t^h
    std::vector<int> votes;                  // aligned with the validator list
    int messages = 0;
    bool succeeded = false;
};

struct ConsensusTranscript {
    std::vector<int> commanders;
    std::vector<CommanderRound> rounds;
    bool agreed = false;
    std::string agreed_payload;
    int deciding_commander_index = -1;
    std::vector<EquivocationEvidence> evidence;
    int total_messages = 0;
};

std::string transcript_to_json(const ConsensusTranscript& tr);
uint64_t transcript_digest(const ConsensusTranscript& tr);

// Iterates commanders in order, broadcasting each one's own proposal and
// voting B~ == own proposal; stops at the first strict-majority success
// unless full_iteration is set (the agreed value stays the first success).
ConsensusTranscript run_consensus(const std::vector<int>& commanders,
                                  const std::map<int, std::string>& proposals,
                                  const std::vector<int>& validators,
                                  const std::map<int, ValidatorBehavior>& behaviors,
                                  const std::vector<uint64_t>& pk_by_id,
                                  const std::map<int, uint64_t>& sk_by_id,
                                  RelayPolicy policy, bool full_iteration,
                                  double forge_prob, RngStream& stream);

// Highest-count element; ties broken by smallest byte representation.
std::string majority(const std::vector<std::string>& multiset);
int majority(const std::vector<int>& multiset);

}  // namespace bcmab
