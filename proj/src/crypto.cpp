#include "bcmab/crypto.hpp"

namespace bcmab {

namespace {
constexpr uint64_t kSkTag = 0x736B;      // "sk"
constexpr uint64_t kPkTag = 0x706B;      // "pk"
constexpr uint64_t kSigTag = 0x736967;   // "sig"
constexpr uint64_t kVrfTag = 0x767266;   // "vrf"
constexpr uint64_t kVrfPfTag = 0x7666;   // "vf"
constexpr uint64_t kCommitTag = 0x636D;  // "cm"
}  // namespace

KeyPair keygen(uint64_t seed) {
    KeyPair kp;
    kp.sk = hash_fields(seed, kSkTag);
    kp.pk = derive_pk(kp.sk);
    return kp;
}

uint64_t derive_pk(uint64_t sk) { return hash_fields(sk, kPkTag); }

Signature sign(uint64_t sk, std::string_view bytes) {
    return Signature{hash_fields(derive_pk(sk), std::string_view(bytes), kSigTag)};
}

bool verify(uint64_t pk, std::string_view bytes, Signature sig) {
    return sig.value == hash_fields(pk, std::string_view(bytes), kSigTag);
}

std::optional<Signature> forge_attempt(uint64_t target_pk, std::string_view bytes,
                                       double forge_prob, RngStream& stream) {
    if (stream.next_unit() < forge_prob)
        return Signature{hash_fields(target_pk, std::string_view(bytes), kSigTag)};
    return std::nullopt;
}

uint64_t payload_digest(std::string_view payload) {
    return hash_fields(std::string_view(payload), kSigTag + 1);
}

uint64_t chain_link_digest(uint64_t pd, const std::vector<ChainLink>& prior) {
    Hasher h;
    h.absorb(pd);
    for (const auto& link : prior) h.absorb(link.signer).absorb(link.sig.value);
    return h.digest();
}

namespace {
std::string link_bytes(uint64_t digest) {
    return std::string(reinterpret_cast<const char*>(&digest), sizeof digest);
}
}  // namespace

SignedMessage make_root_message(std::string payload, int signer, uint64_t sk) {
    SignedMessage msg{std::move(payload), {}};
    uint64_t d = chain_link_digest(payload_digest(msg.payload), msg.chain);
    msg.chain.push_back({signer, sign(sk, link_bytes(d))});
    return msg;
}

std::optional<SignedMessage> try_forge_root(std::string payload, int signer, uint64_t signer_pk,
                                            double forge_prob, RngStream& stream) {
    uint64_t d = chain_link_digest(payload_digest(payload), {});
    auto forged = forge_attempt(signer_pk, link_bytes(d), forge_prob, stream);
    if (!forged) return std::nullopt;
    SignedMessage msg{std::move(payload), {}};
    msg.chain.push_back({signer, *forged});
    return msg;
}

void append_link(SignedMessage& msg, int signer, uint64_t sk) {
    uint64_t d = chain_link_digest(payload_digest(msg.payload), msg.chain);
    msg.chain.push_back({signer, sign(sk, link_bytes(d))});
}

bool verify_chain(const SignedMessage& msg, const std::vector<uint64_t>& pk_by_id) {
    if (msg.chain.empty()) return false;
    uint64_t pd = payload_digest(msg.payload);
    std::vector<ChainLink> prior;
    prior.reserve(msg.chain.size());
    for (const auto& link : msg.chain) {
        if (link.signer < 0 || link.signer >= static_cast<int>(pk_by_id.size())) return false;
        uint64_t d = chain_link_digest(pd, prior);
        if (!verify(pk_by_id[link.signer], link_bytes(d), link.sig)) return false;
        prior.push_back(link);
    }
    return true;
}

VrfOutput vrf_eval(const KeyPair& kp, uint64_t round_seed) {
    VrfOutput out;
    out.hash = hash_fields(kp.pk, round_seed, kVrfTag);
    out.proof = hash_fields(kp.pk, round_seed, out.hash, kVrfPfTag);
    out.hl = 64;
    return out;
}

bool vrf_verify(uint64_t pk, uint64_t round_seed, const VrfOutput& out) {
    return out.hl == 64 && out.hash == hash_fields(pk, round_seed, kVrfTag) &&
           out.proof == hash_fields(pk, round_seed, out.hash, kVrfPfTag);
}

Commitment commit(uint64_t value, uint64_t nonce) {
    return Commitment{hash_fields(value, nonce, kCommitTag)};
}

bool verify_commitment(const Commitment& c, uint64_t value, uint64_t nonce) {
    return c == commit(value, nonce);
}

}  // namespace bcmab
