#ifndef HAMPERC_RNG_HPP
#define HAMPERC_RNG_HPP

#include <cstdint>

namespace hamperc {

/**
 * SplitMix64 (Steele, Lea and Flood 2014).
 *
 * Every random stream in the library is a SplitMix64 sequence whose initial
 * state is derived from a (key, counter) pair with stream_seed(). The
 * generator identity is part of the reproducibility contract: the same
 * master seed gives the same samples on every platform.
 */
class SplitMix64
{
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }

    result_type operator()()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    static constexpr std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

// Seed of substream `counter` under `key`. Independent of how work is split.
constexpr std::uint64_t stream_seed(std::uint64_t key, std::uint64_t counter)
{
    return SplitMix64::mix(SplitMix64::mix(key) ^ SplitMix64::mix(counter + 0x632be59bd9b4e019ULL));
}

// Uniform double in the open interval (0, 1) from the top 53 bits.
inline double uniform_open01(SplitMix64& g)
{
    return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform integer in [0, bound) by Lemire's multiply-shift with rejection.
inline std::uint64_t uniform_below(SplitMix64& g, std::uint64_t bound)
{
    unsigned __int128 m = static_cast<unsigned __int128>(g()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound)
    {
        std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold)
        {
            m = static_cast<unsigned __int128>(g()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

} // namespace hamperc

#endif
