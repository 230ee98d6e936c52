#ifndef ESD_NUMFIELD_IDEAL_HPP
#define ESD_NUMFIELD_IDEAL_HPP

#include "numfield/cubic.hpp"

#include <vector>

namespace esd {

// Fractional ideal of the (constructed) order, as an HNF row lattice over the
// integral basis w0, w1, w2 with a common denominator.
struct FracIdeal {
    std::array<std::array<BigInt, 3>, 3> m;
    BigInt den = 1;

    bool operator==(const FracIdeal& o) const { return m == o.m && den == o.den; }
};

FracIdeal ideal_one(const CubicField& K);
FracIdeal ideal_from_elements(const CubicField& K, const std::vector<NFElem>& gens);
FracIdeal ideal_principal(const CubicField& K, const NFElem& a);
FracIdeal ideal_mul(const CubicField& K, const FracIdeal& I, const FracIdeal& J);
FracIdeal ideal_inv(const CubicField& K, const FracIdeal& I);
FracIdeal ideal_pow(const CubicField& K, FracIdeal I, long e);
BigRat ideal_norm(const CubicField& K, const FracIdeal& I);
bool ideal_is_integral(const FracIdeal& I);
bool ideal_contains(const CubicField& K, const FracIdeal& I, const NFElem& a);
bool ideal_subset(const CubicField& K, const FracIdeal& I, const FracIdeal& J); // I subset J
// the 3 basis elements of the ideal lattice
std::array<NFElem, 3> ideal_basis(const CubicField& K, const FracIdeal& I);

struct PrimeIdeal {
    FracIdeal I;
    BigInt p;
    long e = 1;    // ramification index
    long fdeg = 1; // residue degree
    NFElem second_gen; // two-element generators (p, second_gen)
};

// factorization of (p): requires maximality of the order at p
std::vector<PrimeIdeal> factor_prime(const CubicField& K, const BigInt& p);

long ideal_val(const CubicField& K, const FracIdeal& I, const PrimeIdeal& P);
long elem_val(const CubicField& K, const NFElem& a, const PrimeIdeal& P);

} // namespace esd

#endif
