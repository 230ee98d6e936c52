#ifndef ESD_ALGEBRA_INTFACTOR_HPP
#define ESD_ALGEBRA_INTFACTOR_HPP

#include "algebra/numbers.hpp"
#include "common/util.hpp"

#include <vector>

namespace esd {

std::vector<uint64_t> primes_up_to(uint64_t n);

// Deterministic for n < 3.317e24 (fixed strong-pseudoprime base set); beyond
// that a Baillie-PSW style test decides, and factor_int refuses to certify
// such cofactors as prime.
bool is_prime(const BigInt& n);

struct IntFactorization {
    std::vector<std::pair<BigInt, int>> factors; // certified primes, ascending
    std::vector<BigInt> unknown;                 // unresolved cofactors (composite or uncertified)
    bool complete = true;                        // true iff unknown is empty
    int sign = 1;

    BigInt value() const {
        BigInt v = sign;
        for (const auto& [p, e] : factors) v *= zpow(p, e);
        for (const auto& u : unknown) v *= u;
        return v;
    }
};

// Trial division then Brent rho under a step budget; incompleteness is encoded
// in the result, never silent. budget counts rho iterations.
IntFactorization factor_int(const BigInt& n, uint64_t budget = 2'000'000,
                            uint64_t seed = kDefaultSeed);

// Convenience: odd squarefree-ish radical data. Returns distinct known prime
// divisors of n (and flags completeness).
struct PrimeDivisors {
    std::vector<BigInt> primes;
    bool complete;
};
PrimeDivisors prime_divisors(const BigInt& n, uint64_t budget = 2'000'000,
                             uint64_t seed = kDefaultSeed);

} // namespace esd

#endif
