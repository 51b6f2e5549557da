#include "bcmab/consensus.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace bcmab {

namespace {

// run_sm internals work on interned payload ids and lightweight chains so
// relaying never copies payload bytes; full SignedMessages are materialized
// only for evidence records.

struct LightMessage {
    int payload = -1;  // index into the payload arena
    std::vector<ChainLink> chain;
};

struct PayloadArena {
    std::vector<std::string> bytes;
    std::vector<uint64_t> digest;      // payload digest
    std::vector<uint64_t> root_digest;  // chain-link digest of an empty chain

    int intern(std::string payload) {
        for (size_t i = 0; i < bytes.size(); ++i)
            if (bytes[i] == payload) return static_cast<int>(i);
        uint64_t pd = payload_digest(payload);
        bytes.push_back(std::move(payload));
        digest.push_back(pd);
        root_digest.push_back(chain_link_digest(pd, {}));
        return static_cast<int>(bytes.size()) - 1;
    }
};

std::string link_bytes(uint64_t digest) {
    return std::string(reinterpret_cast<const char*>(&digest), sizeof digest);
}

// Walks the chain forward, verifying each link against the running digest.
bool chain_ok(const LightMessage& msg, const PayloadArena& arena, int commander, int max_len,
              const std::vector<uint64_t>& pk_by_id) {
    if (msg.chain.empty() || msg.chain.front().signer != commander) return false;
    if (static_cast<int>(msg.chain.size()) > max_len) return false;
    for (size_t a = 0; a < msg.chain.size(); ++a)
        for (size_t b = a + 1; b < msg.chain.size(); ++b)
            if (msg.chain[a].signer == msg.chain[b].signer) return false;

    uint64_t pd = arena.digest[msg.payload];
    Hasher running;
    running.absorb(pd);
    uint64_t d = arena.root_digest[msg.payload];
    for (size_t k = 0; k < msg.chain.size(); ++k) {
        const ChainLink& link = msg.chain[k];
        if (link.signer < 0 || link.signer >= static_cast<int>(pk_by_id.size())) return false;
        if (!verify(pk_by_id[link.signer], link_bytes(d), link.sig)) return false;
        running.absorb(link.signer).absorb(link.sig.value);
        d = running.digest();
    }
    return true;
}

void append_light_link(LightMessage& msg, const PayloadArena& arena, int signer, uint64_t sk) {
    Hasher running;
    running.absorb(arena.digest[msg.payload]);
    uint64_t d = arena.root_digest[msg.payload];
    for (const auto& link : msg.chain) {
        running.absorb(link.signer).absorb(link.sig.value);
        d = running.digest();
    }
    msg.chain.push_back({signer, sign(sk, link_bytes(d))});
}

SignedMessage materialize(const LightMessage& msg, const PayloadArena& arena) {
    return SignedMessage{arena.bytes[msg.payload], msg.chain};
}

}  // namespace

SmResult run_sm(int commander, const std::string& proposal,
                const std::vector<int>& validators,
                const std::map<int, ValidatorBehavior>& behaviors,
                const std::vector<uint64_t>& pk_by_id,
                const std::map<int, uint64_t>& sk_by_id,
                RelayPolicy policy, double forge_prob, RngStream& stream) {
    const int m_relay = policy.m_relay > 0 ? policy.m_relay
                                           : std::max<int>(1, static_cast<int>(validators.size()) - 1);
    const int n = static_cast<int>(validators.size());
    SmResult res;
    PayloadArena arena;

    std::vector<int> slot_of(pk_by_id.size(), -1);
    for (int i = 0; i < n; ++i) slot_of[validators[i]] = i;

    // accepted[slot] holds the first message per distinct payload.
    std::vector<std::vector<LightMessage>> accepted(n);
    auto knows = [&](int slot, int payload) {
        for (const auto& m : accepted[slot])
            if (m.payload == payload) return true;
        return false;
    };

    auto behavior_of = [&](int id) {
        auto it = behaviors.find(id);
        return it == behaviors.end() ? ValidatorBehavior{} : it->second;
    };

    struct Envelope {
        int to;
        LightMessage msg;
    };
    std::vector<Envelope> round, next;
    auto send = [&](int to, LightMessage msg) {
        next.push_back({to, std::move(msg)});
        ++res.messages;
    };

    ValidatorBehavior cmd = behavior_of(commander);
    std::vector<int> lieutenants;
    for (int v : validators)
        if (v != commander) lieutenants.push_back(v);

    auto signed_root = [&](int payload) {
        LightMessage msg{payload, {}};
        msg.chain.push_back({commander, sign(sk_by_id.at(commander),
                                             link_bytes(arena.root_digest[payload]))});
        return msg;
    };

    switch (cmd.attack) {
        case ConsensusAttackKind::None: {
            int p = arena.intern(proposal);
            LightMessage msg = signed_root(p);
            accepted[slot_of[commander]].push_back(msg);  // its own value
            for (int v : lieutenants) send(v, msg);
            break;
        }
        case ConsensusAttackKind::Equivocate: {
            LightMessage a = signed_root(arena.intern(proposal));
            LightMessage b = signed_root(arena.intern(proposal + "#alt"));
            for (size_t k = 0; k < lieutenants.size(); ++k)
                send(lieutenants[k], k < lieutenants.size() / 2 ? a : b);
            break;
        }
        case ConsensusAttackKind::WrongForward: {
            // As commander this degenerates to an ordinary (wrong) proposal
            // under its own valid signature.
            LightMessage msg = signed_root(arena.intern(proposal + "#wf"));
            for (int v : lieutenants) send(v, msg);
            break;
        }
        case ConsensusAttackKind::Silent:
            break;
    }

    int rounds_left = m_relay + 1;
    while (!next.empty() && rounds_left-- > 0) {
        round.swap(next);
        next.clear();
        for (const auto& env : round) {
            int self = env.to;
            const LightMessage& msg = env.msg;
            if (!chain_ok(msg, arena, commander, m_relay, pk_by_id)) continue;
            int slot = slot_of[self];
            if (knows(slot, msg.payload)) continue;
            accepted[slot].push_back(msg);

            if (static_cast<int>(msg.chain.size()) >= m_relay) continue;
            auto relay_targets = [&](const LightMessage& m) {
                std::vector<int> out;
                for (int v : validators) {
                    if (v == self) continue;
                    bool signer = false;
                    for (const auto& link : m.chain)
                        if (link.signer == v) { signer = true; break; }
                    if (!signer) out.push_back(v);
                }
                return out;
            };
            ValidatorBehavior b = behavior_of(self);
            switch (b.attack) {
                case ConsensusAttackKind::None: {
                    LightMessage relayed = msg;
                    append_light_link(relayed, arena, self, sk_by_id.at(self));
                    for (int to : relay_targets(relayed)) send(to, relayed);
                    break;
                }
                case ConsensusAttackKind::Equivocate: {
                    // Selective forwarding: only half the remaining targets.
                    LightMessage relayed = msg;
                    append_light_link(relayed, arena, self, sk_by_id.at(self));
                    auto targets = relay_targets(relayed);
                    for (size_t k = 0; k < targets.size() / 2; ++k) send(targets[k], relayed);
                    break;
                }
                case ConsensusAttackKind::WrongForward: {
                    // Needs a forged commander signature over the altered
                    // payload; drops except with forge_prob.
                    auto fake = try_forge_root(arena.bytes[msg.payload] + "#x", commander,
                                               pk_by_id[commander], forge_prob, stream);
                    if (fake) {
                        int p = arena.intern(fake->payload);
                        LightMessage forged{p, fake->chain};
                        append_light_link(forged, arena, self, sk_by_id.at(self));
                        for (int to : relay_targets(forged)) send(to, forged);
                    }
                    break;
                }
                case ConsensusAttackKind::Silent:
                    break;
            }
        }
    }

    for (int i = 0; i < n; ++i) {
        int v = validators[i];
        res.derived[v] =
            accepted[i].size() == 1 ? arena.bytes[accepted[i].front().payload] : kDefaultValue;
    }
    // One evidence record per commander, from the first validator holding two
    // verifying chains over distinct payloads.
    for (int i = 0; i < n; ++i) {
        if (accepted[i].size() >= 2) {
            res.evidence.push_back({commander, materialize(accepted[i][0], arena),
                                    materialize(accepted[i][1], arena)});
            break;
        }
    }
    return res;
}

ConsensusTranscript run_consensus(const std::vector<int>& commanders,
                                  const std::map<int, std::string>& proposals,
                                  const std::vector<int>& validators,
                                  const std::map<int, ValidatorBehavior>& behaviors,
                                  const std::vector<uint64_t>& pk_by_id,
                                  const std::map<int, uint64_t>& sk_by_id,
                                  RelayPolicy policy, bool full_iteration,
                                  double forge_prob, RngStream& stream) {
    ConsensusTranscript tr;
    tr.commanders = commanders;
    for (size_t h = 0; h < commanders.size(); ++h) {
        int commander = commanders[h];
        SmResult sm = run_sm(commander, proposals.at(commander), validators, behaviors,
                             pk_by_id, sk_by_id, policy, forge_prob, stream);
        tr.total_messages += sm.messages;
        for (auto& ev : sm.evidence) tr.evidence.push_back(std::move(ev));

        CommanderRound round;
        round.commander = commander;
        round.messages = sm.messages;
        std::vector<int> votes;
        int first_voter = -1;
        for (int v : validators) {
            const std::string& derived = sm.derived.at(v);
            round.derived_digest[v] = payload_digest(derived);
            auto it = behaviors.find(v);
            bool protocol = it == behaviors.end() || it->second.protocol_vote;
            int vote = 0;
            if (protocol && derived != kDefaultValue && derived == proposals.at(v)) vote = 1;
            if (vote == 1 && first_voter < 0) first_voter = v;
            votes.push_back(vote);
        }
        round.votes = votes;
        round.succeeded = majority(votes) == 1;
        if (round.succeeded && !tr.agreed) {
            tr.agreed = true;
            tr.agreed_payload = sm.derived.at(first_voter);
            tr.deciding_commander_index = static_cast<int>(h);
        }
        tr.rounds.push_back(std::move(round));
        if (tr.agreed && !full_iteration) break;
    }
    return tr;
}

std::string majority(const std::vector<std::string>& multiset) {
    if (multiset.empty()) throw std::invalid_argument("majority: empty multiset");
    std::map<std::string, int> counts;
    for (const auto& s : multiset) counts[s]++;
    const std::string* best = nullptr;
    int best_count = -1;
    for (const auto& [value, count] : counts) {
        // std::map iterates in byte order, so the first max wins ties.
        if (count > best_count) {
            best = &value;
            best_count = count;
        }
    }
    return *best;
}

int majority(const std::vector<int>& multiset) {
    std::vector<std::string> repr;
    repr.reserve(multiset.size());
    for (int v : multiset) repr.push_back(std::to_string(v));
    return std::stoi(majority(repr));
}

std::string transcript_to_json(const ConsensusTranscript& tr) {
    nlohmann::json j;
    j["commanders"] = tr.commanders;
    j["agreed"] = tr.agreed;
    j["deciding_commander_index"] = tr.deciding_commander_index;
    j["total_messages"] = tr.total_messages;
    j["evidence_count"] = tr.evidence.size();
    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& r : tr.rounds) {
        nlohmann::json rj;
        rj["commander"] = r.commander;
        rj["votes"] = r.votes;
        rj["messages"] = r.messages;
        rj["succeeded"] = r.succeeded;
        nlohmann::json derived = nlohmann::json::object();
        for (const auto& [v, d] : r.derived_digest) derived[std::to_string(v)] = d;
        rj["derived_digest"] = derived;
        rounds.push_back(rj);
    }
    j["rounds"] = rounds;
    return j.dump();
}

uint64_t transcript_digest(const ConsensusTranscript& tr) {
    Hasher h;
    h.absorb(static_cast<uint64_t>(tr.agreed ? 1 : 0));
    h.absorb(tr.deciding_commander_index);
    h.absorb(static_cast<uint64_t>(tr.total_messages));
    for (const auto& r : tr.rounds) {
        h.absorb(r.commander).absorb(static_cast<uint64_t>(r.succeeded ? 1 : 0));
        for (int v : r.votes) h.absorb(v);
        for (const auto& [v, d] : r.derived_digest) h.absorb(v).absorb(d);
    }
    h.absorb(std::string_view(tr.agreed_payload));
    return h.digest();
}

}  // namespace bcmab
