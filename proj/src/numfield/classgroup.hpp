#ifndef ESD_NUMFIELD_CLASSGROUP_HPP
#define ESD_NUMFIELD_CLASSGROUP_HPP

#include "numfield/ideal.hpp"
#include "numfield/units.hpp"

namespace esd {

enum class Tri { Yes, No, Unknown };

// Decisive principal test by exhaustive enumeration below a unit-covering
// bound; Unknown only on budget exhaustion.
Tri is_principal(const CubicField& K, const FracIdeal& I, const UnitBasis& U,
                 NFElem* generator = nullptr, uint64_t enum_budget = 40'000'000);

struct ClassGroupResult {
    bool known = false;
    std::string reason;               // when unknown
    std::vector<BigInt> invariants;   // nontrivial invariant factors d1 | d2 | ...
    BigInt order = 1;
    long two_rank = 0;                // dim_F2 Cl[2]
};

// Brute-force certified class group for small discriminants: factor-base
// relations below the Minkowski bound, Smith normal form, then decisive
// principal tests certify that no relation is missing.
ClassGroupResult class_group_oracle(const CubicField& K, uint64_t budget = 40'000'000,
                                    uint64_t seed = kDefaultSeed);

} // namespace esd

#endif
