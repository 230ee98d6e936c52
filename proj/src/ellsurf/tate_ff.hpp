#ifndef ESD_ELLSURF_TATE_FF_HPP
#define ESD_ELLSURF_TATE_FF_HPP

#include "ellsurf/kodaira.hpp"
#include "ellsurf/residue.hpp"

#include <array>
#include <stdexcept>

namespace esd {

inline constexpr long kValInf = 1L << 40;

struct TateFiber {
    KodairaSymbol sym;
    long v_delta = 0;   // valuation of the minimal discriminant
    long tamagawa = 1;  // #Phi(k_v)
    bool split = false; // multiplicative types only
};

// Tate's algorithm at a place of k(t) with residue characteristic not 2 or 3,
// for a model y^2 = x^3 + A x + B. Local is a bundle of the uniformizer and
// the residue field of the place:
//   Poly, Elem types; val/divpow/lift on polynomials; residue arithmetic
//   add, sub, mul, neg, inv, of_int, is_zero, is_square, roots; resk(f, k)
//   reduces f/pi^k; pmul_int multiplies a polynomial by a small integer.
template <class Local>
TateFiber tate_ff(typename Local::Poly A, typename Local::Poly B, const Local& loc) {
    using Elem = typename Local::Elem;

    // minimal model at the place
    while (loc.val(A) >= 4 && loc.val(B) >= 6) {
        A = loc.divpow(A, 4);
        B = loc.divpow(B, 6);
    }
    // delta = -16 (4A^3 + 27B^2)
    auto delta = loc.pmul_int(A * A * A, -64) + loc.pmul_int(B * B, -432);
    long vd = loc.val(delta);
    if (vd >= kValInf) throw std::domain_error("tate_ff: singular surface (delta = 0)");

    TateFiber out;
    out.v_delta = vd;
    if (vd == 0) {
        out.sym = {KodairaSymbol::I0, 0};
        out.tamagawa = 1;
        return out;
    }

    long vA = loc.val(A), vB = loc.val(B);

    if (vA == 0) {
        // multiplicative: I_n, n = v(delta); split iff -c6 = 864 B is a square
        out.sym = {KodairaSymbol::In, vd};
        Elem u = loc.R.mul(loc.resk(B, 0), loc.R.of_int(864));
        out.split = loc.R.is_square(u);
        if (out.split) out.tamagawa = vd;
        else out.tamagawa = (vd % 2 == 0) ? 2 : 1;
        return out;
    }

    // additive types
    if (vB == 1) {
        out.sym = {KodairaSymbol::II, 0};
        out.tamagawa = 1;
        return out;
    }
    if (vA == 1) { // vB >= 2
        out.sym = {KodairaSymbol::III, 0};
        out.tamagawa = 2;
        return out;
    }
    if (vB == 2) { // vA >= 2
        out.sym = {KodairaSymbol::IV, 0};
        out.tamagawa = loc.R.is_square(loc.resk(B, 2)) ? 3 : 1;
        return out;
    }

    // vA >= 2, vB >= 3: residual cubic P(T) = T^3 + a T + b
    Elem a = loc.resk(A, 2);
    Elem b = loc.resk(B, 3);
    bool a0 = loc.R.is_zero(a), b0 = loc.R.is_zero(b);
    if (!a0 || !b0) {
        // disc(P) = -4a^3 - 27 b^2
        Elem disc = loc.R.sub(
            loc.R.mul(loc.R.of_int(-4), loc.R.mul(a, loc.R.mul(a, a))),
            loc.R.mul(loc.R.of_int(27), loc.R.mul(b, b)));
        if (!loc.R.is_zero(disc)) {
            // I_0*: c = 1 + #roots of P over k_v
            out.sym = {KodairaSymbol::I0star, 0};
            auto rts = loc.R.roots({b, a, loc.R.of_int(0), loc.R.of_int(1)});
            out.tamagawa = 1 + static_cast<long>(rts.size());
            return out;
        }
        // double (not triple) root r = -3b/(2a); translate x -> x + lift(r)*pi
        Elem r = loc.R.neg(loc.R.mul(loc.R.mul(loc.R.of_int(3), b),
                                     loc.R.inv(loc.R.mul(loc.R.of_int(2), a))));
        auto Rp = loc.lift(r) * loc.pi_pow(1);
        // model y^2 = x^3 + a2 x^2 + a4 x + a6
        auto a2 = loc.pmul_int(Rp, 3);
        auto a4 = A + loc.pmul_int(Rp * Rp, 3);
        auto a6 = B + A * Rp + Rp * Rp * Rp;
        // I_m* subloop, m = 2r-1 odd tests on a6, m = 2r even tests on the quadratic
        Elem a2_1 = loc.resk(a2, 1);
        long m = 1, rr = 1;
        for (;;) {
            // odd m = 2r - 1: distinct roots of Y^2 - a6/pi^{2r+2}
            if (loc.val(a6) == 2 * rr + 2) {
                out.sym = {KodairaSymbol::Instar, m};
                out.tamagawa = loc.R.is_square(loc.resk(a6, 2 * rr + 2)) ? 4 : 2;
                break;
            }
            ++m; // even m = 2r
            Elem q4 = loc.resk(a4, rr + 2);
            Elem q6 = loc.resk(a6, 2 * rr + 3);
            Elem d = loc.R.sub(loc.R.mul(q4, q4),
                               loc.R.mul(loc.R.of_int(4), loc.R.mul(a2_1, q6)));
            if (!loc.R.is_zero(d)) {
                out.sym = {KodairaSymbol::Instar, m};
                out.tamagawa = loc.R.is_square(d) ? 4 : 2;
                break;
            }
            // translate x -> x + lift(X0) * pi^{r+1}, X0 = -a4,r+2 / (2 a2,1)
            Elem X0 = loc.R.neg(loc.R.mul(q4, loc.R.inv(loc.R.mul(loc.R.of_int(2), a2_1))));
            auto S = loc.lift(X0) * loc.pi_pow(rr + 1);
            auto a4n = a4 + loc.pmul_int(a2 * S, 2) + loc.pmul_int(S * S, 3);
            auto a6n = a6 + a4 * S + a2 * (S * S) + S * S * S;
            auto a2n = a2 + loc.pmul_int(S, 3);
            a2 = a2n;
            a4 = a4n;
            a6 = a6n;
            ++m;
            ++rr;
            if (m > vd) throw std::logic_error("tate_ff: I_n* loop overran v(delta)");
        }
        if (m != vd - 6) throw std::logic_error("tate_ff: I_n* index mismatch");
        return out;
    }

    // triple root at 0: vA >= 3, vB >= 4
    vA = loc.val(A);
    vB = loc.val(B);
    if (vB == 4) {
        out.sym = {KodairaSymbol::IVstar, 0};
        out.tamagawa = loc.R.is_square(loc.resk(B, 4)) ? 3 : 1;
        return out;
    }
    if (vA == 3) { // vB >= 5
        out.sym = {KodairaSymbol::IIIstar, 0};
        out.tamagawa = 2;
        return out;
    }
    if (vB == 5) { // vA >= 4
        out.sym = {KodairaSymbol::IIstar, 0};
        out.tamagawa = 1;
        return out;
    }
    throw std::logic_error("tate_ff: non-minimal state unreachable");
}

// ---- local contexts ----

struct QLocal {
    NFResidue R;
    RatPoly pi;
    using Poly = RatPoly;
    using Elem = NFResidue::Elem;

    explicit QLocal(RatPoly pi_in) : R(pi_in), pi(pi_in.monic()) {}

    long val(const Poly& f) const {
        long v = f.val_at(pi);
        return v < 0 ? kValInf : v;
    }
    Poly divpow(const Poly& f, long k) const { return f.divexact_pow(pi, k); }
    Elem resk(const Poly& f, long k) const { return R.reduce(k ? divpow(f, k) : f); }
    Poly lift(const Elem& e) const { return e; }
    Poly pi_pow(long k) const {
        Poly r{BigRat(1)};
        for (long i = 0; i < k; ++i) r = r * pi;
        return r;
    }
    Poly pmul_int(const Poly& f, long n) const { return f * BigRat(n); }
};

struct FqLocal {
    FqResidue R;
    FqPoly pi;
    FqCtxPtr base;
    using Poly = FqPoly;
    using Elem = FqElem;

    FqLocal(FqCtxPtr base_in, FqPoly pi_in)
        : R(base_in, pi_in.monic()), pi(pi_in.monic()), base(std::move(base_in)) {}

    long val(const Poly& f) const {
        long v = f.val_at(pi);
        return v < 0 ? kValInf : v;
    }
    Poly divpow(const Poly& f, long k) const { return f.divexact_pow(pi, k); }
    Elem resk(const Poly& f, long k) const { return R.reduce(k ? divpow(f, k) : f); }
    Poly lift(const Elem& e) const { return R.lift(e); }
    Poly pi_pow(long k) const {
        Poly r = FqPoly::constant(base, base->one());
        for (long i = 0; i < k; ++i) r = r * pi;
        return r;
    }
    Poly pmul_int(const Poly& f, long n) const {
        long p = static_cast<long>(base->p());
        long m = n % p;
        if (m < 0) m += p;
        return f.mul_elem(base->from_base(static_cast<uint64_t>(m)));
    }
};

} // namespace esd

#endif
