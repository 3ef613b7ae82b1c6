#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace microgrid::rng {

// splitmix64: seed expansion and named sub-stream derivation.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive a sub-stream seed from a master seed and a stream name, so adding a
// stream never shifts the draws of another.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view stream_name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : stream_name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::uint64_t s = master ^ h;
    return splitmix64(s);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view stream_name,
                                 std::uint64_t index) {
    std::uint64_t s = derive_seed(master, stream_name) ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return splitmix64(s);
}

// xoshiro256++ with explicit transforms for uniform/normal/Weibull draws.
// All transforms are spelled out so two builds produce the same streams
// (std::normal_distribution is implementation-defined).
class Stream {
  public:
    explicit Stream(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : state_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform on [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform on (0, 1], for logs
    double uniform_pos() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller; one draw per call, the paired draw is discarded to keep the
    // stream position independent of call parity.
    double normal(double mean = 0.0, double stddev = 1.0) {
        double u1 = uniform_pos();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * M_PI * u2);
    }

    // Inverse-CDF Weibull: scale * (-ln(1-u))^(1/shape).
    double weibull(double shape, double scale) {
        if (shape <= 0.0 || scale <= 0.0)
            throw std::invalid_argument("weibull: shape and scale must be > 0");
        double u = uniform();
        return scale * std::pow(-std::log1p(-u), 1.0 / shape);
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Rademacher +-1 draw.
    double sign() { return (next_u64() & 1u) ? 1.0 : -1.0; }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4]{};
};

}  // namespace microgrid::rng
