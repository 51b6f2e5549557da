#pragma once

#include <cstdint>
#include <vector>

#include "bcmab/config.hpp"

namespace bcmab {

// Secure-comparison abstraction over private pull counts. Only booleans and
// the per-arm threshold scalars cross this boundary; raw counts never appear
// in blocks or logs (blocks carry commitments).
class ComparisonOracle {
public:
    // reported_counts[m][i]: what participant m submits for arm i (honest
    // participants submit true counts; malicious submissions are governed by
    // their profile).
    ComparisonOracle(std::vector<std::vector<int64_t>> reported_counts, int num_arms,
                     int64_t burn_in);

    // k_i(t) = max_k n_{k,i}(t) * K / L, the minimal admissible threshold.
    std::vector<double> threshold(int64_t t) const;

    // m in A_t^j  <=>  n_{m,i}(t) > n_{j,i}(t) / k_i(t) for every arm i.
    bool membership(int candidate, int querier, int64_t t) const;

private:
    std::vector<std::vector<int64_t>> counts_;
    std::vector<int64_t> max_count_;  // per arm
    int num_arms_;
    int64_t burn_in_;
};

}  // namespace bcmab
