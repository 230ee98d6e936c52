#ifndef ESD_NUMFIELD_UNITS_HPP
#define ESD_NUMFIELD_UNITS_HPP

#include "numfield/cubic.hpp"

#include <optional>

namespace esd {

// Exact, complete square test in K: factor minpoly(alpha)(T^2) over Q and
// look for a cubic factor with a root in K (Trager). Returns a square root
// when alpha is a square.
std::optional<NFElem> nf_sqrt(const CubicField& K, const NFElem& alpha);

// Independently re-checkable evidence that alpha is NOT a square in K.
struct SquareWitness {
    enum Kind { RealEmbedding, ResiduePrime } kind = RealEmbedding;
    int real_index = 0;            // which real embedding is negative
    BigInt q;                      // residue witness: prime q
    std::vector<BigInt> qfactor;   // monic irreducible factor of f mod q (lifted coeffs)
};

std::optional<SquareWitness> nonsquare_witness(const CubicField& K, const NFElem& alpha,
                                               int max_primes = 2000);
bool verify_nonsquare_witness(const CubicField& K, const NFElem& alpha, const SquareWitness& w);

struct UnitBasis {
    std::vector<NFElem> fund;   // r1 + r2 - 1 independent units
    bool odd_index_certified = false;
    // terminal condition holds: no +-(product of subset) is a square
};

struct UnitSearchError : std::runtime_error {
    long bound_reached;
    explicit UnitSearchError(long b)
        : std::runtime_error("unit search exhausted at coordinate bound " + std::to_string(b)),
          bound_reached(b) {}
};

// Finds a full-rank subgroup of O^* of odd index by bounded coordinate search
// (plus caller-provided hints), then 2-saturates it by square-root descent.
UnitBasis units_odd_index(const CubicField& K, const std::vector<NFElem>& hints = {},
                          long coord_bound = 40);

// representatives of V / V^2 * {+-1}: the unit-square-class twists used by the
// descent certificates (4 classes for signature (1,1), 8 for (3,0))
std::vector<NFElem> unit_square_classes(const CubicField& K, const UnitBasis& U);

} // namespace esd

#endif
