#include "bcmab/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bcmab {

bool TrustedSet::empty() const {
    if (placeholder) return true;
    for (const auto& arm : per_arm)
        if (!arm.empty()) return false;
    return true;
}

namespace {
std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace

std::string serialize_trusted_set(const TrustedSet& ts) {
    std::ostringstream os;
    if (ts.placeholder) {
        os << "P:" << ts.burn_in_arm;
        return os.str();
    }
    os << "B:" << ts.per_arm.size();
    for (const auto& arm : ts.per_arm) {
        os << "|";
        for (size_t k = 0; k < arm.size(); ++k) {
            if (k) os << ",";
            os << arm[k].id << "@" << fmt_double(arm[k].value);
        }
    }
    return os.str();
}

TrustedSet parse_trusted_set(const std::string& bytes) {
    TrustedSet ts;
    if (bytes.rfind("P:", 0) == 0) {
        ts.placeholder = true;
        ts.burn_in_arm = std::stoi(bytes.substr(2));
        return ts;
    }
    if (bytes.rfind("B:", 0) != 0) throw SimInvariantError("malformed trusted-set bytes");
    size_t bar = bytes.find('|');
    int arms = std::stoi(bytes.substr(2, bar == std::string::npos ? std::string::npos : bar - 2));
    ts.per_arm.resize(arms);
    std::set<int> members;
    size_t pos = bar;
    for (int i = 0; i < arms && pos != std::string::npos; ++i) {
        size_t next = bytes.find('|', pos + 1);
        std::string seg = bytes.substr(pos + 1, next == std::string::npos ? std::string::npos
                                                                          : next - pos - 1);
        std::istringstream ss(seg);
        std::string item;
        while (std::getline(ss, item, ',')) {
            size_t at = item.find('@');
            TrustedMember m;
            m.id = std::stoi(item.substr(0, at));
            m.value = std::strtod(item.c_str() + at + 1, nullptr);
            ts.per_arm[i].push_back(m);
            members.insert(m.id);
        }
        pos = next;
    }
    ts.member_union.assign(members.begin(), members.end());
    return ts;
}

std::vector<int> build_filter_set(int querier, int64_t t, const ComparisonOracle& oracle,
                                  int num_participants, int64_t burn_in) {
    std::vector<int> out;
    if (t <= burn_in) return out;
    for (int m = 0; m < num_participants; ++m)
        if (oracle.membership(m, querier, t)) out.push_back(m);
    return out;
}

TrustedSet build_trusted_set(AggregationOption option, const std::vector<int>& filter_set,
                             const std::vector<std::vector<double>>& broadcasts,
                             int f, int64_t t, int64_t burn_in,
                             const std::set<int>& blocklist, int num_arms) {
    TrustedSet ts;
    bool gate_ok = static_cast<int>(filter_set.size()) > 2 * f;
    bool learning = t > burn_in;
    if (!learning || (option == AggregationOption::Option1 && !gate_ok)) {
        ts.placeholder = true;
        ts.burn_in_arm = static_cast<int>(t % num_arms);
        return ts;
    }

    ts.per_arm.resize(num_arms);
    std::set<int> members;
    std::vector<TrustedMember> column;
    for (int i = 0; i < num_arms; ++i) {
        column.clear();
        for (int id : filter_set) column.push_back({id, broadcasts[id][i]});
        // Ties broken by id so the trimmed size is exact and deterministic.
        std::sort(column.begin(), column.end(), [](const TrustedMember& a, const TrustedMember& b) {
            if (a.value != b.value) return a.value < b.value;
            return a.id < b.id;
        });
        int n = static_cast<int>(column.size());
        if (n > 2 * f) {
            for (int k = f; k < n - f; ++k) {
                const TrustedMember& m = column[k];
                if (option == AggregationOption::Option3 && blocklist.count(m.id)) continue;
                ts.per_arm[i].push_back(m);
                members.insert(m.id);
            }
            std::sort(ts.per_arm[i].begin(), ts.per_arm[i].end(),
                      [](const TrustedMember& a, const TrustedMember& b) { return a.id < b.id; });
        }
    }
    ts.member_union.assign(members.begin(), members.end());
    return ts;
}

Blocklist update_blocklist(const Blocklist& current,
                           const std::vector<EquivocationEvidence>& incoming,
                           const std::vector<uint64_t>& pk_by_id) {
    Blocklist next = current;
    for (const auto& ev : incoming) {
        if (ev.first.payload == ev.second.payload) continue;
        if (ev.first.chain.empty() || ev.second.chain.empty()) continue;
        if (ev.first.chain[0].signer != ev.accused || ev.second.chain[0].signer != ev.accused)
            continue;
        if (!verify_chain(ev.first, pk_by_id) || !verify_chain(ev.second, pk_by_id)) continue;
        if (next.ids.insert(ev.accused).second) next.evidence.push_back(ev);
    }
    return next;
}

std::vector<int> build_safe_zone_set(const std::vector<double>& hat,
                                     const std::vector<std::vector<double>>& broadcasts,
                                     double epsilon) {
    std::vector<int> out;
    for (size_t j = 0; j < broadcasts.size(); ++j) {
        bool inside = true;
        for (size_t i = 0; i < hat.size(); ++i) {
            if (!std::isfinite(hat[i]) ||
                std::abs(hat[i] - broadcasts[j][i]) > epsilon / 2.0) {
                inside = false;
                break;
            }
        }
        if (inside) out.push_back(static_cast<int>(j));
    }
    return out;
}

}  // namespace bcmab
