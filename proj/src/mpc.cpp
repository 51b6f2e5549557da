#include "bcmab/mpc.hpp"

#include <stdexcept>

namespace bcmab {

ComparisonOracle::ComparisonOracle(std::vector<std::vector<int64_t>> reported_counts,
                                   int num_arms, int64_t burn_in)
    : counts_(std::move(reported_counts)), num_arms_(num_arms), burn_in_(burn_in) {
    max_count_.assign(num_arms_, 0);
    for (const auto& row : counts_)
        for (int i = 0; i < num_arms_; ++i) max_count_[i] = std::max(max_count_[i], row[i]);
}

std::vector<double> ComparisonOracle::threshold(int64_t t) const {
    if (t <= burn_in_) throw SimInvariantError("threshold queried during burn-in");
    std::vector<double> k(num_arms_);
    for (int i = 0; i < num_arms_; ++i)
        k[i] = static_cast<double>(max_count_[i]) * num_arms_ / static_cast<double>(burn_in_);
    return k;
}

bool ComparisonOracle::membership(int candidate, int querier, int64_t t) const {
    if (t <= burn_in_) return false;
    // n_m > n_j / k_i with k_i = maxN_i * K / L, cross-multiplied to stay in
    // exact integer arithmetic: n_m * maxN_i * K > n_j * L.
    for (int i = 0; i < num_arms_; ++i) {
        if (max_count_[i] == 0) return false;
        __int128 lhs = static_cast<__int128>(counts_[candidate][i]) * max_count_[i] * num_arms_;
        __int128 rhs = static_cast<__int128>(counts_[querier][i]) * burn_in_;
        if (!(lhs > rhs)) return false;
    }
    return true;
}

}  // namespace bcmab
