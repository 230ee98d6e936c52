// Development search for the shipped demo surface: y^2 = x^3 + a(t)x + b(t)
// with two visible independent sections x_i = w_i^2, a parametric unit
// c(t) - theta (i.e. c^3 + a c + b = unit value), type II at t = 0, odd
// Tamagawa numbers everywhere, and witnesses against universal bad reduction.
#include "descent/survey.hpp"
#include "heights/height.hpp"

#include <iostream>

using namespace esd;

namespace {

// exact square root of a polynomial, if it is a perfect square
std::optional<RatPoly> poly_sqrt(const RatPoly& f) {
    if (f.is_zero()) return RatPoly();
    if (f.deg() % 2 != 0) return std::nullopt;
    BigRat lc = f.lc();
    BigInt n2, d2;
    if (lc < 0) return std::nullopt;
    if (!zis_square(lc.get_num(), &n2) || !zis_square(lc.get_den(), &d2)) return std::nullopt;
    long m = f.deg() / 2;
    std::vector<BigRat> g(m + 1);
    g[m] = BigRat(n2, d2);
    for (long k = m - 1; k >= 0; --k) {
        // ordered sum over pairs (i, j), i + j = m + k, k < i, j < m
        BigRat acc = 0;
        for (long i = k + 1; i <= m - 1; ++i) {
            long j = m + k - i;
            if (j <= k || j >= m) continue;
            acc += g[i] * g[j];
        }
        g[k] = (f.coeff(m + k) - acc) / (2 * g[m]);
    }
    RatPoly G(g);
    if ((G * G - f).is_zero()) return G;
    return std::nullopt;
}

} // namespace

int main(int argc, char** argv) {
    long range = argc > 1 ? atol(argv[1]) : 3;
    long found = 0;
    for (long c2 = -range; c2 <= range; ++c2)
    for (long c1 = -range; c1 <= range; ++c1)
    for (long a2 = -range; a2 <= range; ++a2)
    for (long a1 = -range; a1 <= range; ++a1)
    for (int sgn = 0; sgn < 2; ++sgn) {
        if (c2 == 0) continue; // want deg b = 6 for good reduction at infinity
        RatPoly c = RatPoly({BigRat(1), BigRat(c1), BigRat(c2)});
        RatPoly a = RatPoly({BigRat(0), BigRat(a1), BigRat(a2)});
        RatPoly b = RatPoly(BigRat(sgn ? -1 : 1)) - c * c * c - a * c;
        if (b.deg() != 6) continue;
        if (b.coeff(0) != 0 || b.coeff(1) == 0) continue; // type II at t = 0
        // sections: w = t + g with D = w^6 + a w^2 + b a perfect square
        std::vector<std::pair<RatPoly, RatPoly>> sections; // (w, r)
        for (long g = -6; g <= 6 && sections.size() < 4; ++g) {
            RatPoly w = RatPoly({BigRat(g), BigRat(1)});
            RatPoly w2 = w * w, w3 = w2 * w;
            RatPoly D = w3 * w3 + a * w2 + b;
            auto r = poly_sqrt(D);
            if (!r) continue;
            sections.emplace_back(w, *r - w3);
        }
        if (sections.size() < 2) continue;
        // build the surface and run the checks
        try {
            auto s = SurfaceQ::make_short(a, b);
            // E[2] geometrically irreducible
            try {
                torsion_curve(s, 2);
            } catch (ReducibleTorsion&) {
                continue;
            }
            auto rep = analyze_surface(Surface(s));
            bool ok = true;
            bool has_totally_ramified = false;
            for (auto& fb : rep.fibers) {
                if (fb.tamagawa % 2 == 0) ok = false;
                if (fb.sym.is_star_even() && fb.tamagawa == 4) ok = false;
                auto k = fb.sym.kind;
                if (k == KodairaSymbol::II || k == KodairaSymbol::IIstar ||
                    k == KodairaSymbol::IV || k == KodairaSymbol::IVstar)
                    has_totally_ramified = true;
            }
            if (!ok || !has_totally_ramified) continue;
            // UBR check
            auto ubr = ubr_primes(s, 6);
            bool ubr_ok = true;
            for (auto& v : ubr)
                if (v.kind != UbrVerdict::NOT_UBR) ubr_ok = false;
            if (!ubr_ok) continue;
            // independence of the two sections at a sample fiber
            std::vector<PointQt> pts;
            for (int i = 0; i < 2; ++i) {
                auto& [w, r] = sections[i];
                RatPoly x = w * w, y = w * w * w + r;
                pts.push_back(PointQt::of(RatFunc::poly(x), RatFunc::poly(y)));
            }
            if (!qt_on_curve(s, pts[0]) || !qt_on_curve(s, pts[1])) continue;
            long rank_ok = 0;
            for (long tv : {3, 5, 7, 11}) {
                BigRat T(tv);
                if (s.delta.eval(T) == 0) continue;
                std::array<BigRat, 5> coef = {BigRat(0), BigRat(0), BigRat(0), s.A.eval(T), s.B.eval(T)};
                try {
                    auto E = CurveQ::make(coef);
                    std::vector<PointQ> fpts;
                    bool good = true;
                    for (auto& P : pts) {
                        try {
                            fpts.push_back(PointQ::of(P.x.eval(T), P.y.eval(T)));
                        } catch (...) { good = false; }
                    }
                    if (!good) continue;
                    auto cert = rank_certificate(E, fpts, {1e-8});
                    if (cert.certified_rank >= 2) { rank_ok = 1; break; }
                } catch (...) { continue; }
            }
            if (!rank_ok) continue;
            std::cout << "CANDIDATE a = " << a.str() << "  b = " << b.str()
                      << "  c = " << c.str() << " sgn=" << (sgn?-1:1) << "\n";
            std::cout << "  sections:";
            for (auto& [w, r] : sections) std::cout << " (w=" << w.str() << ", r=" << r.str() << ")";
            std::cout << "\n  fibers:";
            for (auto& fb : rep.fibers)
                std::cout << " [" << fb.place << ": " << fb.sym.str() << " c=" << fb.tamagawa << "]";
            std::cout << "\n  plan: ";
            try {
                auto plan = choose_plan(s, ubr, 0, 1);
                std::cout << "t0=" << zstr(plan.t0) << " mod=" << zstr(plan.modulus);
            } catch (std::exception& e) { std::cout << e.what(); }
            std::cout << std::endl;
            if (++found >= 12) return 0;
        } catch (std::exception& e) {
            continue;
        }
    }
    std::cout << "search done, found " << found << std::endl;
    return 0;
}
