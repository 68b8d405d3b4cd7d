#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tnest {

// splitmix64; used for seeding, stream derivation and hash material.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** (Blackman/Vigna). Self-contained so that draws are
// bit-identical across platforms and standard library versions; output
// files and samples must reproduce byte-for-byte from a seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64_next(s);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // unbiased integer in [0, n), n > 0
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool coin() { return (next() >> 63) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

    // Independent stream for (master, stream). Slices draw from their own
    // streams so processing order cannot change results.
    static std::uint64_t derive_stream(std::uint64_t master, std::uint64_t stream) {
        std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (stream + 0x632be59bd9b4e019ULL));
        std::uint64_t a = splitmix64_next(s);
        std::uint64_t b = splitmix64_next(s);
        return a ^ rotl(b, 23);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

// Stream tags for derive_stream so different subsystems never share draws.
namespace stream_tag {
inline constexpr std::uint64_t refinement = 0x01ULL << 56;
inline constexpr std::uint64_t slice = 0x02ULL << 56;
inline constexpr std::uint64_t sample_index = 0x03ULL << 56;
inline constexpr std::uint64_t generator = 0x04ULL << 56;
inline constexpr std::uint64_t baseline = 0x05ULL << 56;
}  // namespace stream_tag

}  // namespace tnest
