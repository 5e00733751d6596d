#ifndef HOSPT_RNG_HPP
#define HOSPT_RNG_HPP

#include <bit>
#include <cstdint>

namespace hospt {

// splitmix64: tiny, fully specified generator so that seeded streams are
// bit-identical across platforms and compilers (golden-file requirement).
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 random bits
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) *
               (1.0 / 9007199254740992.0);
    }

    // uniform in [-1, 1)
    double next_pm1() { return 2.0 * next_unit() - 1.0; }

  private:
    std::uint64_t state_;
};

inline std::uint64_t splitmix_once(std::uint64_t x) {
    return SplitMix64(x).next_u64();
}

// Independent stream per (grid value, realization). Keyed by the value bits,
// not the grid index, so extending a grid leaves existing points untouched.
inline std::uint64_t stream_seed(std::uint64_t base, double grid_value,
                                 std::uint64_t realization) {
    const std::uint64_t wbits = std::bit_cast<std::uint64_t>(grid_value);
    return splitmix_once(base ^ splitmix_once(wbits) ^
                         splitmix_once(realization * 0x9E3779B97F4A7C15ull + 1));
}

} // namespace hospt

#endif
