#include "bcmab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bcmab {

double RngStream::gaussian(double mean, double sd) {
    double u1 = next_unit();
    double u2 = next_unit();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(2.0 * std::numbers::pi * u2);
}

std::map<std::string, RngStream> derive_streams(uint64_t master_seed,
                                                const std::vector<std::string>& ids) {
    if (ids.empty()) throw std::invalid_argument("derive_streams: empty id set");
    std::map<std::string, RngStream> out;
    for (const auto& id : ids) {
        if (!out.emplace(id, RngStream(master_seed, id)).second)
            throw std::invalid_argument("derive_streams: duplicate id '" + id + "'");
    }
    return out;
}

}  // namespace bcmab
