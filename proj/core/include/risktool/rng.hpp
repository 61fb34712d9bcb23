#ifndef RISKTOOL_RNG_HPP
#define RISKTOOL_RNG_HPP

#include <cstdint>

namespace risktool {

// SplitMix64 is the frozen RNG contract of this library: every platform must
// reproduce identical streams for a given seed. Do not swap the mixing
// constants or the unit-interval mapping without bumping the major version.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform draw on the open interval (0,1): never exactly 0 or 1, so
    // inverse-CDF transforms stay finite.
    double next_unit() {
        const double mantissa = static_cast<double>(next_u64() >> 11) + 0.5;
        return mantissa * (1.0 / 9007199254740992.0); // 2^-53
    }

    // Derives an independent stream seed, used for replicates, per-model runs
    // and minibatch index draws. Same fixed-contract rules as the stream.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 mixer(seed ^ (0xD1B54A32D192ED03ull + stream * 0x9E3779B97F4A7C15ull));
        return mixer.next_u64();
    }

private:
    std::uint64_t state_;
};

} // namespace risktool

#endif
