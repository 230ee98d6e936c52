#ifndef ESD_HEIGHTS_ECQ_HPP
#define ESD_HEIGHTS_ECQ_HPP

#include "algebra/numbers.hpp"

#include <array>
#include <optional>

namespace esd {

// Elliptic curve over Q, long Weierstrass form, exact arithmetic.
struct CurveQ {
    std::array<BigRat, 5> a; // a1, a2, a3, a4, a6
    BigRat b2, b4, b6, b8, delta;

    static CurveQ make(const std::array<BigRat, 5>& a);
    bool integral() const;
};

struct PointQ {
    bool infinity = true;
    BigRat x, y;

    static PointQ O() { return PointQ{}; }
    static PointQ of(BigRat x, BigRat y) { return PointQ{false, std::move(x), std::move(y)}; }
    bool operator==(const PointQ& o) const {
        if (infinity != o.infinity) return false;
        if (infinity) return true;
        return x == o.x && y == o.y;
    }
};

bool on_curve(const CurveQ& E, const PointQ& P);
PointQ ec_neg(const CurveQ& E, const PointQ& P);
PointQ ec_add(const CurveQ& E, const PointQ& P, const PointQ& Q);
PointQ ec_mul(const CurveQ& E, const PointQ& P, long n);

// order if P is torsion (order <= 16), else 0
long torsion_order(const CurveQ& E, const PointQ& P);

} // namespace esd

#endif
