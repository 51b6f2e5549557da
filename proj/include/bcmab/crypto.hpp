#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcmab/rng.hpp"

namespace bcmab {

// Simulation-grade primitives: keyed 64-bit hashes standing in for GMR
// signatures and VRFs. Verification uses public data only; unforgeability
// inside the simulation is an API property (attackers go through
// forge_attempt, which succeeds with probability forge_prob).

struct KeyPair {
    uint64_t pk = 0;
    uint64_t sk = 0;
};

struct Signature {
    uint64_t value = 0;
    bool operator==(const Signature&) const = default;
};

KeyPair keygen(uint64_t seed);
uint64_t derive_pk(uint64_t sk);

Signature sign(uint64_t sk, std::string_view bytes);
bool verify(uint64_t pk, std::string_view bytes, Signature sig);

// Succeeds (returns a signature that verifies under target_pk) with
// probability forge_prob per attempt.
std::optional<Signature> forge_attempt(uint64_t target_pk, std::string_view bytes,
                                       double forge_prob, RngStream& stream);

// Ordered signature chain over one payload; link k signs the payload plus
// every earlier link.
struct ChainLink {
    int signer = -1;
    Signature sig;
};

struct SignedMessage {
    std::string payload;
    std::vector<ChainLink> chain;
};

// Digest the verifier expects for the next link given the links so far.
uint64_t chain_link_digest(uint64_t payload_digest, const std::vector<ChainLink>& prior);
uint64_t payload_digest(std::string_view payload);

SignedMessage make_root_message(std::string payload, int signer, uint64_t sk);
// Root message whose first link is forged against signer_pk via
// forge_attempt; nullopt when the attempt fails.
std::optional<SignedMessage> try_forge_root(std::string payload, int signer, uint64_t signer_pk,
                                            double forge_prob, RngStream& stream);
void append_link(SignedMessage& msg, int signer, uint64_t sk);

// Every link must verify under the listed signer's key, in order.
bool verify_chain(const SignedMessage& msg,
                  const std::vector<uint64_t>& pk_by_id);

struct VrfOutput {
    uint64_t hash = 0;
    uint64_t proof = 0;
    int hl = 64;
};

VrfOutput vrf_eval(const KeyPair& kp, uint64_t round_seed);
bool vrf_verify(uint64_t pk, uint64_t round_seed, const VrfOutput& out);

struct Commitment {
    uint64_t digest = 0;
    bool operator==(const Commitment&) const = default;
};

Commitment commit(uint64_t value, uint64_t nonce);
bool verify_commitment(const Commitment& c, uint64_t value, uint64_t nonce);

}  // namespace bcmab
