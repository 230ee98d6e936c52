#ifndef ESD_ALGEBRA_ZFACTOR_HPP
#define ESD_ALGEBRA_ZFACTOR_HPP

#include "algebra/ratpoly.hpp"
#include "common/util.hpp"

namespace esd {

struct QFactorization {
    BigRat unit = 1;                                   // input = unit * prod factors^mult * prod unresolved^mult
    std::vector<std::pair<RatPoly, int>> factors;      // monic, irreducible over Q
    std::vector<std::pair<RatPoly, int>> unresolved;   // monic, further factorization unknown (budget)
    bool complete = true;

    RatPoly value() const {
        RatPoly v{BigRat(1)};
        for (auto& [f, m] : factors)
            for (int i = 0; i < m; ++i) v = v * f;
        for (auto& [f, m] : unresolved)
            for (int i = 0; i < m; ++i) v = v * f;
        return v * unit;
    }
};

// Factorization over Q by squarefree split, modular factorization, Hensel
// lifting and exhaustive subset recombination under a budget (number of
// candidate subsets tested). Irreducibility verdicts are exact; when the
// budget runs out the affected chunk is returned in `unresolved`.
QFactorization factor_q(const RatPoly& f, uint64_t subset_budget = (1u << 20),
                        uint64_t seed = kDefaultSeed);

// Exact verdict; throws BudgetExceeded if recombination could not finish.
bool q_is_irreducible(const RatPoly& f, uint64_t subset_budget = (1u << 20));

// Roots in Q with multiplicities.
std::vector<std::pair<BigRat, int>> q_roots(const RatPoly& f);

} // namespace esd

#endif
