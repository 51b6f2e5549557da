#pragma once

#include <cstdint>
#include <cstring>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bcmab {

// 64-bit mixing core shared by the RNG streams and the simulation-grade
// crypto. Not cryptographic; collision-resistant enough for test scales.
inline uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Incremental 64-bit hasher over heterogeneous fields.
class Hasher {
public:
    Hasher() = default;
    explicit Hasher(uint64_t seed) : state_(mix64(seed ^ 0x5851F42D4C957F2DULL)) {}

    Hasher& absorb(uint64_t v) {
        state_ = mix64(state_ ^ v);
        return *this;
    }
    Hasher& absorb(int64_t v) { return absorb(static_cast<uint64_t>(v)); }
    Hasher& absorb(int v) { return absorb(static_cast<uint64_t>(static_cast<int64_t>(v))); }
    Hasher& absorb(double v) {
        uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        return absorb(bits);
    }
    Hasher& absorb(std::string_view s) {
        uint64_t acc = 0xCBF29CE484222325ULL;
        for (unsigned char c : s) acc = (acc ^ c) * 0x100000001B3ULL;
        absorb(acc);
        return absorb(static_cast<uint64_t>(s.size()));
    }
    uint64_t digest() const { return mix64(state_); }

private:
    uint64_t state_ = 0x243F6A8885A308D3ULL;
};

template <typename... Ts>
uint64_t hash_fields(const Ts&... fields) {
    Hasher h;
    (h.absorb(fields), ...);
    return h.digest();
}

// Counter-based deterministic stream. Streams derived from the same master
// seed but different ids never interact: draw i is a pure function of
// (master, id, i).
class RngStream {
public:
    RngStream() = default;
    RngStream(uint64_t master_seed, std::string id)
        : id_(std::move(id)), base_(hash_fields(master_seed, std::string_view(id_))) {}

    const std::string& id() const { return id_; }
    uint64_t counter() const { return counter_; }

    uint64_t next_u64() { return mix64(base_ ^ (0x9E3779B97F4A7C15ULL * ++counter_)); }

    // Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    bool bernoulli(double p) { return next_unit() < p; }

    // Uniform integer in [0, n).
    uint64_t uniform_int(uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

    // Box-Muller; consumes exactly two draws, no cached spare.
    double gaussian(double mean, double sd);

private:
    std::string id_;
    uint64_t base_ = 0;
    uint64_t counter_ = 0;
};

// Deterministic, collision-free stream per id; repeated calls identical.
std::map<std::string, RngStream> derive_streams(uint64_t master_seed,
                                                const std::vector<std::string>& ids);

}  // namespace bcmab
