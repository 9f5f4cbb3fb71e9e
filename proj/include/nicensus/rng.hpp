#ifndef NICENSUS_RNG_HPP
#define NICENSUS_RNG_HPP

#include <cstdint>

namespace nicensus {

/// Counter-based generator: the state is (key, counter) and each output is
/// the splitmix64 finalizer applied to the next counter value. A stream is
/// keyed by (seed, stream id), so sample j can be regenerated from
/// (seed, j) alone, independent of how samples are spread over workers.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

    std::uint64_t next() noexcept
    {
        ++counter_;
        return mix(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform on [0, n) by rejection; n >= 1.
    std::uint64_t below(std::uint64_t n) noexcept
    {
        const std::uint64_t limit = -n % n; // 2^64 mod n
        for (;;) {
            const std::uint64_t x = next();
            if (x >= limit)
                return x % n;
        }
    }

    static std::uint64_t mix(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace nicensus

#endif
