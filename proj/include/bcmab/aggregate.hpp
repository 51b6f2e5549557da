#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "bcmab/config.hpp"
#include "bcmab/crypto.hpp"
#include "bcmab/mpc.hpp"

namespace bcmab {

struct TrustedMember {
    int id = -1;
    double value = 0.0;
    bool operator==(const TrustedMember&) const = default;
};

struct TrustedSet {
    // During burn-in (and when Option 1's |A| > 2f gate fails) the set is a
    // placeholder that records only the round-robin arm; it contributes no
    // estimators and no cost.
    bool placeholder = false;
    int burn_in_arm = -1;
    std::vector<std::vector<TrustedMember>> per_arm;  // B_{t,i}
    std::vector<int> member_union;                    // flattened B_t, sorted

    bool empty() const;
    bool operator==(const TrustedSet&) const = default;
};

// Canonical bytes used as the consensus proposal; doubles serialize
// round-trip exactly.
std::string serialize_trusted_set(const TrustedSet& ts);
TrustedSet parse_trusted_set(const std::string& bytes);

// A_t^j for t > L via the comparison oracle; empty during burn-in.
std::vector<int> build_filter_set(int querier, int64_t t, const ComparisonOracle& oracle,
                                  int num_participants, int64_t burn_in);

// Per-arm trim of the top-f and bottom-f broadcast values among A_t members.
// Option 1 gates on |A| > 2f, Option 2 trims whenever t > L (empty result
// allowed), Option 3 additionally removes blocklisted ids.
TrustedSet build_trusted_set(AggregationOption option, const std::vector<int>& filter_set,
                             const std::vector<std::vector<double>>& broadcasts,
                             int f, int64_t t, int64_t burn_in,
                             const std::set<int>& blocklist, int num_arms);

struct EquivocationEvidence {
    int accused = -1;
    SignedMessage first;
    SignedMessage second;
};

struct Blocklist {
    std::set<int> ids;
    std::vector<EquivocationEvidence> evidence;
};

// Adds commanders with verified conflicting-signature evidence; rejects
// records whose chains fail verification. Monotone non-decreasing.
Blocklist update_blocklist(const Blocklist& current,
                           const std::vector<EquivocationEvidence>& incoming,
                           const std::vector<uint64_t>& pk_by_id);

// C_t = { j : |hat_i - broadcast_{j,i}| <= eps/2 for every arm i }.
std::vector<int> build_safe_zone_set(const std::vector<double>& hat,
                                     const std::vector<std::vector<double>>& broadcasts,
                                     double epsilon);

}  // namespace bcmab
