#include "heights/ecq.hpp"

#include <stdexcept>

namespace esd {

CurveQ CurveQ::make(const std::array<BigRat, 5>& a) {
    CurveQ E;
    E.a = a;
    const BigRat &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
    E.b2 = a1 * a1 + 4 * a2;
    E.b4 = 2 * a4 + a1 * a3;
    E.b6 = a3 * a3 + 4 * a6;
    E.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    E.delta = -E.b2 * E.b2 * E.b8 - 8 * E.b4 * E.b4 * E.b4 - 27 * E.b6 * E.b6 +
              9 * E.b2 * E.b4 * E.b6;
    if (E.delta == 0) throw std::invalid_argument("CurveQ: singular curve");
    return E;
}

bool CurveQ::integral() const {
    for (auto& c : a)
        if (c.get_den() != 1) return false;
    return true;
}

bool on_curve(const CurveQ& E, const PointQ& P) {
    if (P.infinity) return true;
    const BigRat &a1 = E.a[0], &a2 = E.a[1], &a3 = E.a[2], &a4 = E.a[3], &a6 = E.a[4];
    BigRat lhs = P.y * P.y + a1 * P.x * P.y + a3 * P.y;
    BigRat rhs = P.x * P.x * P.x + a2 * P.x * P.x + a4 * P.x + a6;
    return lhs == rhs;
}

PointQ ec_neg(const CurveQ& E, const PointQ& P) {
    if (P.infinity) return P;
    return PointQ::of(P.x, -P.y - E.a[0] * P.x - E.a[2]);
}

PointQ ec_add(const CurveQ& E, const PointQ& P, const PointQ& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    const BigRat &a1 = E.a[0], &a2 = E.a[1], &a3 = E.a[2], &a4 = E.a[3], &a6 = E.a[4];
    BigRat lam, nu;
    if (P.x == Q.x) {
        if (Q.y == -P.y - a1 * P.x - a3) return PointQ::O();
        // doubling
        BigRat den = 2 * P.y + a1 * P.x + a3;
        lam = (3 * P.x * P.x + 2 * a2 * P.x + a4 - a1 * P.y) / den;
        nu = (-(P.x * P.x * P.x) + a4 * P.x + 2 * a6 - a3 * P.y) / den;
    } else {
        BigRat den = Q.x - P.x;
        lam = (Q.y - P.y) / den;
        nu = (P.y * Q.x - Q.y * P.x) / den;
    }
    BigRat x3 = lam * lam + a1 * lam - a2 - P.x - Q.x;
    BigRat y3 = -(lam + a1) * x3 - nu - a3;
    return PointQ::of(x3, y3);
}

PointQ ec_mul(const CurveQ& E, const PointQ& P, long n) {
    if (n == 0) return PointQ::O();
    PointQ base = n < 0 ? ec_neg(E, P) : P;
    unsigned long k = n < 0 ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
    PointQ acc = PointQ::O();
    PointQ pw = base;
    while (k) {
        if (k & 1) acc = ec_add(E, acc, pw);
        k >>= 1;
        if (k) pw = ec_add(E, pw, pw);
    }
    return acc;
}

long torsion_order(const CurveQ& E, const PointQ& P) {
    if (P.infinity) return 1;
    PointQ acc = P;
    for (long k = 2; k <= 16; ++k) {
        acc = ec_add(E, acc, P);
        if (acc.infinity) return k;
    }
    return 0;
}

} // namespace esd
