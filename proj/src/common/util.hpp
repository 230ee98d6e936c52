#ifndef ESD_COMMON_UTIL_HPP
#define ESD_COMMON_UTIL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace esd {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr uint64_t kDefaultSeed = 0x5eed5eed5eed5eedULL;

// splitmix64; deterministic PRNG used by all randomized subroutines.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed = kDefaultSeed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    uint64_t below(uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below(0)");
        uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do { x = next(); } while (x >= lim);
        return x % n;
    }
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace esd

#endif
