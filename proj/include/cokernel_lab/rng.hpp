// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace cokernel_lab {

inline std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256** 1.0 with the 2^128 jump; seeded through splitmix64.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed)
    {
        for (auto& w : s_)
            w = splitmix64(seed);
    }
    explicit Xoshiro256(const std::array<std::uint64_t, 4>& state) : s_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Equivalent to 2^128 calls; used to carve non-overlapping streams.
    void jump()
    {
        static constexpr std::array<std::uint64_t, 4> kJump = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL,
                                                               0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
        std::array<std::uint64_t, 4> acc{};
        for (auto word : kJump)
            for (int b = 0; b < 64; ++b) {
                if (word & (std::uint64_t{1} << b))
                    for (int i = 0; i < 4; ++i)
                        acc[static_cast<std::size_t>(i)] ^= s_[static_cast<std::size_t>(i)];
                (*this)();
            }
        s_ = acc;
    }

    /// Uniform in [0, n) by rejection; identical on every platform.
    std::uint64_t below(std::uint64_t n)
    {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = (*this)();
            if (r >= threshold)
                return r % n;
        }
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    const std::array<std::uint64_t, 4>& state() const { return s_; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<std::uint64_t, 4> s_{};
};

/// Trials are cut into blocks of this size; block b draws from the stream
/// reached by b jumps from the seeded generator, so results do not depend on
/// how blocks are spread over workers.
inline constexpr std::uint64_t kBlockSize = 1024;

inline std::vector<Xoshiro256> block_streams(std::uint64_t seed, std::uint64_t blocks)
{
    std::vector<Xoshiro256> out;
    out.reserve(blocks);
    Xoshiro256 g(seed);
    for (std::uint64_t b = 0; b < blocks; ++b) {
        out.push_back(g);
        g.jump();
    }
    return out;
}

inline std::uint64_t block_count(std::uint64_t trials) { return (trials + kBlockSize - 1) / kBlockSize; }

} // namespace cokernel_lab
