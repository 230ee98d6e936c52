#ifndef ESD_ELLSURF_TATE_Q_HPP
#define ESD_ELLSURF_TATE_Q_HPP

#include "algebra/numbers.hpp"
#include "ellsurf/kodaira.hpp"

#include <array>

namespace esd {

// Local reduction data of an elliptic curve over Q at a prime p, computed by
// the full Tate algorithm (valid at every p, including 2 and 3).
struct LocalRedQ {
    KodairaSymbol sym;
    long v_delta_min = 0;
    long tamagawa = 1;
    bool split = false;                 // for multiplicative reduction
    std::array<BigInt, 5> minimal;      // a1,a2,a3,a4,a6 of a p-minimal model
    // transformation from the input (integral) model to `minimal`:
    // x = u^2 x' + r, y = u^3 y' + s u^2 x' + t
    BigInt u = 1, r = 0, s = 0, t = 0;
    bool good() const { return sym.good(); }
};

// a = (a1, a2, a3, a4, a6), arbitrary rational coefficients.
LocalRedQ tate_q(const std::array<BigRat, 5>& a, const BigInt& p);

// convenience for integral models
LocalRedQ tate_q_int(const std::array<BigInt, 5>& a, const BigInt& p);

} // namespace esd

#endif
