#include "ellsurf/tate_q.hpp"
#include "algebra/fqpoly.hpp"
#include "ellsurf/tate_ff.hpp" // kValInf

#include <stdexcept>

namespace esd {

namespace {

long vp(const BigInt& x, const BigInt& p) {
    if (x == 0) return kValInf;
    return zval(x, p);
}

struct Model {
    BigInt a1, a2, a3, a4, a6;
    BigInt b2, b4, b6, b8, delta;

    void derive() {
        b2 = a1 * a1 + 4 * a2;
        b4 = 2 * a4 + a1 * a3;
        b6 = a3 * a3 + 4 * a6;
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        delta = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    }

    // x = x' + r, y = y' + s x' + t  (u = 1)
    void shift(const BigInt& r, const BigInt& s, const BigInt& t) {
        BigInt A1 = a1 + 2 * s;
        BigInt A2 = a2 - s * a1 + 3 * r - s * s;
        BigInt A3 = a3 + r * a1 + 2 * t;
        BigInt A4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        BigInt A6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        a1 = A1; a2 = A2; a3 = A3; a4 = A4; a6 = A6;
        derive();
    }

    // divide by u = p (requires p^i | a_i)
    void scale_down(const BigInt& p) {
        a1 = zdivexact(a1, p);
        a2 = zdivexact(a2, p * p);
        a3 = zdivexact(a3, p * p * p);
        a4 = zdivexact(a4, zpow(p, 4));
        a6 = zdivexact(a6, zpow(p, 6));
        derive();
    }
};

struct Fq1 {
    FqCtxPtr F;
    BigInt p;
    explicit Fq1(const BigInt& p_in) : F(FqCtx::prime_field(p_in.get_ui())), p(p_in) {}
    uint64_t red(const BigInt& x) const { return F->fp().reduce_int(x); }
    // roots in F_p of c0 + c1 T + ... (with multiplicity)
    std::vector<std::pair<uint64_t, int>> roots(const std::vector<BigInt>& coeffs) const {
        std::vector<FqElem> v;
        for (auto& c : coeffs) v.push_back(F->from_base(red(c)));
        FqPoly f(F, std::move(v));
        std::vector<std::pair<uint64_t, int>> out;
        if (f.deg() < 1) return out;
        for (auto& [r, m] : fq_roots(f)) out.emplace_back(r[0], m);
        return out;
    }
    bool is_qr(const BigInt& x) const { // nonzero square mod p
        uint64_t r = red(x);
        if (r == 0) return false;
        return F->is_square(F->from_base(r));
    }
};

// does Y^2 + B Y + C have a root mod p?
bool quad_has_root(const Fq1& k, const BigInt& B, const BigInt& C) {
    if (k.p == 2) {
        uint64_t b = k.red(B), c = k.red(C);
        // roots among {0,1}: Y=0 -> c; Y=1 -> 1+b+c
        return c == 0 || (1 + b + c) % 2 == 0;
    }
    BigInt disc = B * B - 4 * C;
    return zmod(disc, k.p) == 0 || k.is_qr(disc);
}

// is Y^2 + B Y + C separable mod p (distinct roots over the closure)?
bool quad_separable(const Fq1& k, const BigInt& B, const BigInt& C) {
    if (k.p == 2) return k.red(B) != 0;
    return zmod(B * B - 4 * C, k.p) != 0;
}

// singular point of the reduced curve, as lifts in [0, p)
void singular_point(const Model& E, const Fq1& k, BigInt& r, BigInt& t) {
    const BigInt& p = k.p;
    if (p == 2) {
        uint64_t a1 = k.red(E.a1), a3 = k.red(E.a3), a4 = k.red(E.a4);
        uint64_t x0, y0;
        if (a1 == 1) {
            x0 = a3;                       // from a1 x + a3 = 0
            y0 = (x0 * x0 + a4) % 2;       // from F_x = 0
        } else {
            x0 = a4 % 2;                   // F_x = x^2 + a4 (a1 = 0)
            uint64_t a2r = k.red(E.a2), a6r = k.red(E.a6);
            y0 = (x0 + a2r * x0 + a4 * x0 + a6r) % 2; // y^2 = RHS, sqrt = id
        }
        r = static_cast<long>(x0);
        t = static_cast<long>(y0);
        return;
    }
    // p odd: x0 = multiple root of phi = x^3 + (b2/4) x^2 + (b4/2) x + b6/4
    // computed over F_p; y0 = -(a1 x0 + a3)/2.
    uint64_t inv4 = k.F->fp().inv(k.red(BigInt(4)));
    uint64_t inv2 = k.F->fp().inv(k.red(BigInt(2)));
    auto& fp = k.F->fp();
    std::vector<BigInt> phi = {0, 0, 0, 1};
    phi[2] = static_cast<long>(fp.mul(k.red(E.b2), inv4));
    phi[1] = static_cast<long>(fp.mul(k.red(E.b4), inv2));
    phi[0] = static_cast<long>(fp.mul(k.red(E.b6), inv4));
    auto rts = k.roots(phi);
    uint64_t x0 = 0;
    bool found = false;
    for (auto& [root, mult] : rts)
        if (mult >= 2) {
            x0 = root;
            found = true;
        }
    if (!found) throw std::logic_error("tate_q: no multiple root at singular place");
    uint64_t y0 = fp.mul(fp.neg(fp.add(fp.mul(k.red(E.a1), x0), k.red(E.a3))), inv2);
    r = static_cast<unsigned long>(x0);
    t = static_cast<unsigned long>(y0);
}

} // namespace

LocalRedQ tate_q_int(const std::array<BigInt, 5>& ain, const BigInt& p) {
    if (p < 2) throw std::invalid_argument("tate_q: p must be prime");
    if (!p.fits_ulong_p()) throw std::domain_error("tate_q: prime exceeds word size");
    Fq1 k(p);
    Model E{ain[0], ain[1], ain[2], ain[3], ain[4]};
    E.derive();
    if (E.delta == 0) throw std::domain_error("tate_q: singular curve");

    LocalRedQ out;
    // composite transformation from the input model to the current one
    auto shift_tracked = [&](const BigInt& r2, const BigInt& s2, const BigInt& t2) {
        out.t = out.t + out.u * out.u * out.u * t2 + out.s * out.u * out.u * r2;
        out.r = out.r + out.u * out.u * r2;
        out.s = out.s + out.u * s2;
        E.shift(r2, s2, t2);
    };
    for (;;) {
        long n = vp(E.delta, p);
        if (n == 0) {
            out.sym = {KodairaSymbol::I0, 0};
            out.v_delta_min = 0;
            out.tamagawa = 1;
            break;
        }
        BigInt r, t;
        singular_point(E, k, r, t);
        shift_tracked(r, BigInt(0), t);

        if (vp(E.b2, p) == 0) {
            // type I_n; split iff T^2 + a1 T - a2 has roots in F_p
            out.sym = {KodairaSymbol::In, n};
            out.v_delta_min = n;
            out.split = quad_has_root(k, E.a1, -E.a2);
            out.tamagawa = out.split ? n : (n % 2 == 0 ? 2 : 1);
            break;
        }
        if (vp(E.a6, p) < 2) {
            out.sym = {KodairaSymbol::II, 0};
            out.v_delta_min = n;
            out.tamagawa = 1;
            break;
        }
        if (vp(E.b8, p) < 3) {
            out.sym = {KodairaSymbol::III, 0};
            out.v_delta_min = n;
            out.tamagawa = 2;
            break;
        }
        if (vp(E.b6, p) < 3) {
            out.sym = {KodairaSymbol::IV, 0};
            out.v_delta_min = n;
            // Y^2 + (a3/p) Y - a6/p^2
            out.tamagawa = quad_has_root(k, zdivexact(E.a3, p), -zdivexact(E.a6, p * p)) ? 3 : 1;
            break;
        }

        // normalize to v(a1) >= 1, v(a2) >= 1, v(a3) >= 2, v(a4) >= 2, v(a6) >= 3
        if (p == 2) {
            BigInt s = zmod(E.a2, p);
            shift_tracked(BigInt(0), s, BigInt(0));
            BigInt tau = zmod(zdivexact(E.a6, BigInt(4)), p); // v(a6) >= 2 here
            shift_tracked(BigInt(0), BigInt(0), 2 * tau);
        } else {
            BigInt inv2;
            {
                BigInt two = 2;
                mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
            }
            BigInt s = zmod(-E.a1 * inv2, p);
            shift_tracked(BigInt(0), s, BigInt(0));
            BigInt t2 = zmod(-zdivexact(E.a3, p) * inv2, p) * p;
            shift_tracked(BigInt(0), BigInt(0), t2);
        }
        if (!(vp(E.a1, p) >= 1 && vp(E.a2, p) >= 1 && vp(E.a3, p) >= 2 && vp(E.a4, p) >= 2 &&
              vp(E.a6, p) >= 3))
            throw std::logic_error("tate_q: normalization failed");

        // step 7: residual cubic P(T) = T^3 + (a2/p) T^2 + (a4/p^2) T + (a6/p^3)
        BigInt c2 = zdivexact(E.a2, p), c1 = zdivexact(E.a4, p * p), c0 = zdivexact(E.a6, p * p * p);
        auto rts = k.roots({c0, c1, c2, BigInt(1)});
        int max_mult = 0;
        uint64_t mroot = 0;
        long nroots = 0;
        for (auto& [root, mult] : rts) {
            nroots += 1;
            if (mult > max_mult) {
                max_mult = mult;
                mroot = root;
            }
        }
        // separability: any multiple root of the cubic is rational, so
        // max_mult <= 1 iff P is separable
        if (max_mult <= 1) {
            out.sym = {KodairaSymbol::I0star, 0};
            out.v_delta_min = n;
            out.tamagawa = 1 + nroots;
            break;
        }
        if (max_mult == 2) {
            // I_m* subloop
            shift_tracked(p * BigInt(static_cast<unsigned long>(mroot)), BigInt(0), BigInt(0));
            long m = 1, rr = 1;
            bool done = false;
            while (!done) {
                // odd m = 2 rr - 1: Y^2 + (a3/p^{rr+1}) Y - a6/p^{2rr+2}
                BigInt q3 = zdivexact(E.a3, zpow(p, rr + 1));
                BigInt q6 = zdivexact(E.a6, zpow(p, 2 * rr + 2));
                if (quad_separable(k, q3, -q6)) {
                    out.sym = {KodairaSymbol::Instar, m};
                    out.v_delta_min = n;
                    out.tamagawa = quad_has_root(k, q3, -q6) ? 4 : 2;
                    done = true;
                    break;
                }
                // double root y0; translate y by y0 p^{rr+1}
                BigInt y0;
                if (p == 2) y0 = zmod(q6, p); // sqrt = identity, root of Y^2 + c
                else {
                    BigInt inv2;
                    BigInt two = 2;
                    mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
                    y0 = zmod(-q3 * inv2, p);
                }
                shift_tracked(BigInt(0), BigInt(0), y0 * zpow(p, rr + 1));
                ++m;
                // even m = 2 rr: (a2/p) X^2 + (a4/p^{rr+2}) X + a6/p^{2rr+3}
                BigInt q2 = zdivexact(E.a2, p);
                BigInt q4 = zdivexact(E.a4, zpow(p, rr + 2));
                q6 = zdivexact(E.a6, zpow(p, 2 * rr + 3));
                // separable iff (p != 2: q4^2 - 4 q2 q6 != 0; p = 2: q4 odd)
                bool sep = (p == 2) ? (zmod(q4, p) != 0) : (zmod(q4 * q4 - 4 * q2 * q6, p) != 0);
                if (sep) {
                    out.sym = {KodairaSymbol::Instar, m};
                    out.v_delta_min = n;
                    bool rat;
                    if (p == 2) {
                        // q2 X^2 + q4 X + q6 with q2, q4 odd: roots among {0,1}
                        rat = (zmod(q6, p) == 0) || (zmod(q2 + q4 + q6, p) == 0);
                    } else {
                        BigInt disc = q4 * q4 - 4 * q2 * q6;
                        rat = k.is_qr(disc);
                    }
                    out.tamagawa = rat ? 4 : 2;
                    done = true;
                    break;
                }
                // double root X0; translate x by X0 p^{rr+1}
                BigInt X0;
                if (p == 2) {
                    // X^2 + (q6/q2): root = sqrt = q6*inv(q2) mod 2 = q6 mod 2
                    X0 = zmod(q6, p);
                } else {
                    BigInt inv2q2;
                    BigInt den = zmod(2 * q2, p);
                    mpz_invert(inv2q2.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
                    X0 = zmod(-q4 * inv2q2, p);
                }
                shift_tracked(X0 * zpow(p, rr + 1), BigInt(0), BigInt(0));
                ++m;
                ++rr;
                if (m > n) throw std::logic_error("tate_q: I_n* loop overran");
            }
            break;
        }
        // triple root: translate to zero and continue
        shift_tracked(p * BigInt(static_cast<unsigned long>(mroot)), BigInt(0), BigInt(0));
        // step 8: IV* test on Y^2 + (a3/p^2) Y - a6/p^4
        {
            BigInt q3 = zdivexact(E.a3, p * p);
            BigInt q6 = zdivexact(E.a6, zpow(p, 4));
            if (quad_separable(k, q3, -q6)) {
                out.sym = {KodairaSymbol::IVstar, 0};
                out.v_delta_min = n;
                out.tamagawa = quad_has_root(k, q3, -q6) ? 3 : 1;
                break;
            }
            BigInt y0;
            if (p == 2) y0 = zmod(q6, p);
            else {
                BigInt inv2;
                BigInt two = 2;
                mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
                y0 = zmod(-q3 * inv2, p);
            }
            shift_tracked(BigInt(0), BigInt(0), y0 * p * p);
        }
        // step 9: III*
        if (vp(E.a4, p) == 3) {
            out.sym = {KodairaSymbol::IIIstar, 0};
            out.v_delta_min = n;
            out.tamagawa = 2;
            break;
        }
        // step 10: II*
        if (vp(E.a6, p) == 5) {
            out.sym = {KodairaSymbol::IIstar, 0};
            out.v_delta_min = n;
            out.tamagawa = 1;
            break;
        }
        // step 11: non-minimal
        if (!(vp(E.a1, p) >= 1 && vp(E.a2, p) >= 2 && vp(E.a3, p) >= 3 && vp(E.a4, p) >= 4 &&
              vp(E.a6, p) >= 6))
            throw std::logic_error("tate_q: step 11 valuations");
        E.scale_down(p);
        out.u = out.u * p;
    }
    out.minimal = {E.a1, E.a2, E.a3, E.a4, E.a6};
    return out;
}

LocalRedQ tate_q(const std::array<BigRat, 5>& a, const BigInt& p) {
    // clear denominators: a_i <- a_i * L^i
    BigInt L = 1;
    for (auto& ai : a) L = zlcm(L, ai.get_den());
    std::array<BigInt, 5> ia;
    static const int w[5] = {1, 2, 3, 4, 6};
    for (int i = 0; i < 5; ++i) {
        BigRat scaled = a[i] * BigRat(zpow(L, w[i]));
        if (scaled.get_den() != 1) throw std::logic_error("tate_q: clearing failed");
        ia[i] = scaled.get_num();
    }
    return tate_q_int(ia, p);
}

} // namespace esd
