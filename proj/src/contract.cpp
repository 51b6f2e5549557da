#include "bcmab/contract.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace bcmab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_double(double v) {
    if (std::isinf(v)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    if (s == "inf") return kInf;
    return std::strtod(s.c_str(), nullptr);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}
}  // namespace

std::vector<int> sc_sort(const std::vector<int>& ids, const std::vector<KeyPair>& keys) {
    std::vector<int> out = ids;
    std::sort(out.begin(), out.end(), [&](int a, int b) {
        if (keys[a].pk != keys[b].pk) return keys[a].pk < keys[b].pk;
        return a < b;
    });
    return out;
}

void GlobalUpdateState::commit(const GlobalEstimate& ge, int64_t t) {
    mu_prev = ge.values;
    for (size_t i = 0; i < hat_prev.size(); ++i) {
        if (std::isfinite(ge.hat[i])) hat_prev[i] = ge.hat[i];
        if (std::isfinite(ge.hathat[i])) hathat_prev[i] = ge.hathat[i];
    }
    tau = t;
}

GlobalEstimate global_update(UpdateRule rule, const TrustedSet& ts,
                             const GlobalUpdateState& state, int64_t t, double epsilon,
                             const std::vector<std::vector<double>>& broadcasts,
                             int num_arms) {
    GlobalEstimate ge;
    ge.tau = state.tau;
    ge.hat.assign(num_arms, kInf);
    ge.hathat.assign(num_arms, kInf);
    if (ts.placeholder) {
        ge.values = state.mu_prev;  // carried forward; burn-in contributes nothing
        return ge;
    }
    ge.from_aggregation = true;
    for (int i = 0; i < num_arms; ++i) {
        const auto& members = ts.per_arm[i];
        if (members.empty()) continue;
        double sum = 0.0;
        for (const auto& m : members) sum += m.value;
        ge.hat[i] = sum / static_cast<double>(members.size());
    }
    ge.values.assign(num_arms, kInf);
    switch (rule) {
        case UpdateRule::Halving:
            for (int i = 0; i < num_arms; ++i)
                ge.values[i] = 0.5 * (ge.hat[i] + state.mu_prev[i]);
            break;
        case UpdateRule::Contraction: {
            double p = 1.0 - 1.0 / static_cast<double>(t);
            for (int i = 0; i < num_arms; ++i)
                ge.values[i] = p * state.mu_prev[i] + (1.0 - p) * state.hat_prev[i];
            break;
        }
        case UpdateRule::SafeZone: {
            bool hat_finite = true;
            for (int i = 0; i < num_arms; ++i)
                if (!std::isfinite(ge.hat[i])) hat_finite = false;
            if (hat_finite) {
                ge.safe_zone = build_safe_zone_set(ge.hat, broadcasts, epsilon);
                if (!ge.safe_zone.empty()) {
                    for (int i = 0; i < num_arms; ++i) {
                        double sum = 0.0;
                        for (int j : ge.safe_zone) sum += broadcasts[j][i];
                        ge.hathat[i] = sum / static_cast<double>(ge.safe_zone.size());
                    }
                }
            }
            double p = 1.0 - 1.0 / static_cast<double>(t);
            for (int i = 0; i < num_arms; ++i)
                ge.values[i] = p * state.mu_prev[i] + (1.0 - p) * state.hathat_prev[i];
            break;
        }
    }
    return ge;
}

bool sc_block_verify(const GlobalEstimate& ge) {
    bool any_finite = false;
    for (double v : ge.values) {
        if (std::isfinite(v)) {
            any_finite = true;
            if (v > 2.0) return false;
        }
    }
    return any_finite;
}

std::string estimator_bytes(int64_t t, int id, const std::vector<double>& values) {
    std::ostringstream os;
    os << "est:" << t << ":" << id;
    for (double v : values) os << ":" << fmt_double(v);
    return os.str();
}

uint64_t block_body_digest(const Block& b) {
    Hasher h;
    h.absorb(b.index).absorb(b.prev_digest).absorb(b.approved);
    for (double v : b.global) h.absorb(v);
    for (int a : b.arms) h.absorb(a);
    h.absorb(b.cost).absorb(b.transcript);
    h.absorb(std::string_view(serialize_trusted_set(b.trusted)));
    for (const auto& e : b.estimators) {
        h.absorb(e.id);
        for (double v : e.values) h.absorb(v);
        h.absorb(e.sig.value);
    }
    for (const auto& c : b.count_commitments) h.absorb(c.digest);
    for (const auto& r : b.honest_rewards) h.absorb(r.id).absorb(r.reward);
    return h.digest();
}

void Chain::append(Block block) {
    if (block.index != static_cast<int64_t>(blocks_.size()))
        throw SimInvariantError("block index does not extend the chain");
    if (block.prev_digest != head_digest())
        throw SimInvariantError("block prev digest does not match the head");
    block.digest = block_body_digest(block);
    blocks_.push_back(std::move(block));
}

std::optional<int64_t> Chain::validate(const std::vector<uint64_t>& pk_by_id) const {
    uint64_t prev = 0;
    for (const auto& b : blocks_) {
        if (b.prev_digest != prev) return b.index;
        if (b.digest != block_body_digest(b)) return b.index;
        for (const auto& e : b.estimators)
            if (!verify(pk_by_id[e.id], estimator_bytes(b.index, e.id, e.values), e.sig))
                return b.index;
        prev = b.digest;
    }
    return std::nullopt;
}

namespace {

std::string block_to_line(const Block& b) {
    std::ostringstream os;
    os << b.index << '\t' << b.prev_digest << '\t' << b.approved << '\t';
    for (size_t i = 0; i < b.global.size(); ++i) os << (i ? "," : "") << fmt_double(b.global[i]);
    os << '\t';
    for (size_t i = 0; i < b.arms.size(); ++i) os << (i ? "," : "") << b.arms[i];
    os << '\t' << fmt_double(b.cost) << '\t' << b.transcript << '\t'
       << serialize_trusted_set(b.trusted) << '\t';
    for (size_t i = 0; i < b.estimators.size(); ++i) {
        const auto& e = b.estimators[i];
        if (i) os << '/';
        os << e.id << '@';
        for (size_t k = 0; k < e.values.size(); ++k) os << (k ? "," : "") << fmt_double(e.values[k]);
        os << '@' << e.sig.value;
    }
    os << '\t';
    for (size_t i = 0; i < b.count_commitments.size(); ++i)
        os << (i ? "," : "") << b.count_commitments[i].digest;
    os << '\t';
    for (size_t i = 0; i < b.honest_rewards.size(); ++i) {
        if (i) os << ',';
        os << b.honest_rewards[i].id << '@' << fmt_double(b.honest_rewards[i].reward);
    }
    os << '\t' << b.digest;
    return os.str();
}

Block block_from_line(const std::string& line) {
    auto fields = split(line, '\t');
    if (fields.size() != 12) throw SimInvariantError("malformed block record");
    Block b;
    b.index = std::stoll(fields[0]);
    b.prev_digest = std::stoull(fields[1]);
    b.approved = std::stoi(fields[2]);
    for (const auto& s : split(fields[3], ',')) b.global.push_back(parse_double(s));
    for (const auto& s : split(fields[4], ',')) b.arms.push_back(std::stoi(s));
    b.cost = parse_double(fields[5]);
    b.transcript = std::stoull(fields[6]);
    b.trusted = parse_trusted_set(fields[7]);
    if (!fields[8].empty()) {
        for (const auto& seg : split(fields[8], '/')) {
            auto parts = split(seg, '@');
            if (parts.size() != 3) throw SimInvariantError("malformed estimator record");
            SignedEstimator e;
            e.id = std::stoi(parts[0]);
            for (const auto& s : split(parts[1], ',')) e.values.push_back(parse_double(s));
            e.sig.value = std::stoull(parts[2]);
            b.estimators.push_back(std::move(e));
        }
    }
    if (!fields[9].empty())
        for (const auto& s : split(fields[9], ','))
            b.count_commitments.push_back(Commitment{std::stoull(s)});
    if (!fields[10].empty()) {
        for (const auto& seg : split(fields[10], ',')) {
            auto parts = split(seg, '@');
            if (parts.size() != 2) throw SimInvariantError("malformed reward record");
            b.honest_rewards.push_back({std::stoi(parts[0]), parse_double(parts[1])});
        }
    }
    b.digest = std::stoull(fields[11]);
    return b;
}

}  // namespace

void export_chain(std::ostream& os, const std::string& header_json, const Chain& chain) {
    std::string header = header_json;
    for (char& c : header)
        if (c == '\n') c = ' ';
    os << "#bcmab-chain v1 " << header << '\n';
    for (const auto& b : chain.blocks()) os << block_to_line(b) << '\n';
}

ImportedChain import_chain(std::istream& is, const std::vector<uint64_t>& pk_by_id) {
    ImportedChain out;
    std::string line;
    if (!std::getline(is, line) || line.rfind("#bcmab-chain v1 ", 0) != 0) {
        out.first_invalid = 0;
        return out;
    }
    out.header_json = line.substr(16);
    uint64_t prev = 0;
    int64_t index = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        Block b;
        try {
            b = block_from_line(line);
        } catch (const std::exception&) {
            out.first_invalid = index;
            return out;
        }
        bool ok = b.index == index && b.prev_digest == prev && b.digest == block_body_digest(b);
        if (ok)
            for (const auto& e : b.estimators)
                if (!verify(pk_by_id[e.id], estimator_bytes(b.index, e.id, e.values), e.sig))
                    ok = false;
        if (!ok) {
            out.first_invalid = index;
            return out;
        }
        prev = b.digest;
        out.blocks.push_back(std::move(b));
        ++index;
    }
    return out;
}

std::vector<std::vector<int64_t>> replay_counts(const std::vector<Block>& blocks,
                                                int num_participants, int num_arms) {
    std::vector<std::vector<int64_t>> counts(num_participants,
                                             std::vector<int64_t>(num_arms, 0));
    for (const auto& b : blocks) {
        if (!b.approved) continue;
        for (int m = 0; m < num_participants && m < static_cast<int>(b.arms.size()); ++m)
            counts[m][b.arms[m]]++;
    }
    return counts;
}

}  // namespace bcmab
