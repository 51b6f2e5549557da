#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bcmab/aggregate.hpp"
#include "bcmab/config.hpp"
#include "bcmab/crypto.hpp"

namespace bcmab {

// Deterministic total order on participants by public-key bytes.
std::vector<int> sc_sort(const std::vector<int>& ids, const std::vector<KeyPair>& keys);

struct GlobalEstimate {
    std::vector<double> values;   // μ̃(t); +inf marks INFINITE
    std::vector<double> hat;      // ĥμ(t); +inf when B_{t,i} is empty
    std::vector<double> hathat;   // safe-zone companion; +inf when unused
    std::vector<int> safe_zone;   // C_t (SafeZone rule only)
    bool from_aggregation = false;
    int64_t tau = 0;
};

// Rolling state the update rules draw on: the last approved estimate and the
// most recent finite hat values (genesis all-zeros).
struct GlobalUpdateState {
    std::vector<double> mu_prev;
    std::vector<double> hat_prev;
    std::vector<double> hathat_prev;
    int64_t tau = 0;

    explicit GlobalUpdateState(int num_arms = 0)
        : mu_prev(num_arms, 0.0), hat_prev(num_arms, 0.0), hathat_prev(num_arms, 0.0) {}

    // Call after sc_block approves step t.
    void commit(const GlobalEstimate& ge, int64_t t);
};

// Halving: μ̃ = (ĥμ(t) + μ̃(τ)) / 2, INFINITE propagating.
// Contraction: μ̃ = P_t μ̃(τ) + (1 - P_t) ĥμ(τ), P_t = 1 - 1/t.
// SafeZone: contraction against the previous safe-zone mean over C_t.
// A placeholder trusted set carries the prior estimate forward unchanged.
GlobalEstimate global_update(UpdateRule rule, const TrustedSet& ts,
                             const GlobalUpdateState& state, int64_t t, double epsilon,
                             const std::vector<std::vector<double>>& broadcasts,
                             int num_arms);

// b_t = 1 iff some entry is finite and every finite entry is <= 2.
bool sc_block_verify(const GlobalEstimate& ge);

struct SignedEstimator {
    int id = -1;
    std::vector<double> values;
    Signature sig;
};

struct HonestReward {
    int id = -1;
    double reward = 0.0;  // raw reward of the pulled arm
};

struct Block {
    int64_t index = 0;
    uint64_t prev_digest = 0;
    int approved = 0;  // b_t
    std::vector<double> global;
    std::vector<int> arms;                       // a_m^t per participant
    double cost = 0.0;                           // applied c_t
    uint64_t transcript = 0;                     // consensus transcript digest
    TrustedSet trusted;
    std::vector<SignedEstimator> estimators;     // signed broadcast vectors
    std::vector<Commitment> count_commitments;   // M*K, row-major by id
    std::vector<HonestReward> honest_rewards;
    uint64_t digest = 0;
};

std::string estimator_bytes(int64_t t, int id, const std::vector<double>& values);

uint64_t block_body_digest(const Block& b);

class Chain {
public:
    // Validates the index/prev linkage and seals the digest.
    void append(Block block);

    const std::vector<Block>& blocks() const { return blocks_; }
    uint64_t head_digest() const { return blocks_.empty() ? 0 : blocks_.back().digest; }
    size_t size() const { return blocks_.size(); }

    // Index of the first block whose digest, linkage, or embedded signatures
    // fail; nullopt when intact.
    std::optional<int64_t> validate(const std::vector<uint64_t>& pk_by_id) const;

private:
    std::vector<Block> blocks_;
};

// Newline-delimited canonical records, preceded by a header line carrying the
// scenario document; bit-exact round-trip.
void export_chain(std::ostream& os, const std::string& header_json, const Chain& chain);

struct ImportedChain {
    std::string header_json;
    std::vector<Block> blocks;
    // First block index that failed to parse or re-validate, if any.
    std::optional<int64_t> first_invalid;
};

ImportedChain import_chain(std::istream& is, const std::vector<uint64_t>& pk_by_id);

// Reconstructs every participant's pull counts from arms and approvals.
std::vector<std::vector<int64_t>> replay_counts(const std::vector<Block>& blocks,
                                                int num_participants, int num_arms);

}  // namespace bcmab
