#include "heights/height.hpp"
#include "algebra/intfactor.hpp"
#include "algebra/ratpoly.hpp"
#include "ellsurf/tate_q.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace esd {

namespace {

struct WorkingModel {
    CurveQ E;
    PointQ P;

    // apply (u, r, s, t): x = u^2 x' + r, y = u^3 y' + s u^2 x' + t
    void transform(const BigInt& u, const BigInt& r, const BigInt& s, const BigInt& t) {
        BigRat U(u), R(r), S(s), T(t);
        const BigRat &a1 = E.a[0], &a2 = E.a[1], &a3 = E.a[2], &a4 = E.a[3], &a6 = E.a[4];
        std::array<BigRat, 5> b;
        b[0] = (a1 + 2 * S) / U;
        b[1] = (a2 - S * a1 + 3 * R - S * S) / (U * U);
        b[2] = (a3 + R * a1 + 2 * T) / (U * U * U);
        b[3] = (a4 - S * a3 + 2 * R * a2 - (T + R * S) * a1 + 3 * R * R - 2 * S * T) /
               (U * U * U * U);
        b[4] = (a6 + R * a4 + R * R * a2 + R * R * R - T * a3 - T * T - R * T * a1) /
               (U * U * U * U * U * U);
        E = CurveQ::make(b);
        if (!P.infinity) {
            BigRat xp = (P.x - R) / (U * U);
            BigRat yp = (P.y - S * (U * U) * xp - T) / (U * U * U);
            P = PointQ::of(xp, yp);
        }
    }
};

// duplication polynomials of the model: x(2P) = Phi(x)/Psi(x)
void duplication_polys(const CurveQ& E, std::vector<BigInt>& Phi, std::vector<BigInt>& Psi) {
    auto num = [](const BigRat& q) { return q.get_num(); };
    // model is integral here
    BigInt b2 = num(E.b2), b4 = num(E.b4), b6 = num(E.b6), b8 = num(E.b8);
    Phi = {-b8, -2 * b6, -b4, BigInt(0), BigInt(1)};
    Psi = {b6, 2 * b4, b2, BigInt(4)};
}

bool point_is_singular_mod_p(const CurveQ& E, const PointQ& P, const BigInt& p) {
    // P assumed p-integral coordinates; E integral
    auto red = [&](const BigRat& q) {
        BigInt den_inv;
        BigInt den = zmod(q.get_den(), p);
        mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        return zmod(q.get_num() * den_inv, p);
    };
    BigInt x = red(P.x), y = red(P.y);
    BigInt a1 = red(E.a[0]), a2 = red(E.a[1]), a3 = red(E.a[2]), a4 = red(E.a[3]);
    BigInt Fy = zmod(2 * y + a1 * x + a3, p);
    BigInt Fx = zmod(3 * x * x + 2 * a2 * x + a4 - a1 * y, p);
    return Fy == 0 && Fx == 0;
}

long ns_points_mod2(const std::array<BigInt, 5>& a) {
    // count nonsingular affine points of the reduction mod 2, plus O
    long count = 1;
    for (long x = 0; x <= 1; ++x)
        for (long y = 0; y <= 1; ++y) {
            BigInt lhs = zmod(BigInt(y * y) + a[0] * x * y + a[2] * y, BigInt(2));
            BigInt rhs = zmod(BigInt(x * x * x) + a[1] * x * x + a[3] * x + a[4], BigInt(2));
            if (lhs != rhs) continue;
            BigInt Fy = zmod(a[0] * x + a[2], BigInt(2)); // 2y = 0
            BigInt Fx = zmod(3 * x * x + 2 * a[1] * x + a[3] - a[0] * y, BigInt(2));
            if (Fy == 0 && Fx == 0) continue; // singular point
            ++count;
        }
    return count;
}

} // namespace

HeightResult canonical_height(const CurveQ& Ein, const PointQ& Pin, const HeightOptions& opt) {
    HeightResult out;
    if (!on_curve(Ein, Pin)) throw std::invalid_argument("canonical_height: point not on curve");
    if (Pin.infinity || torsion_order(Ein, Pin) > 0) {
        out.value = RI::exact_zero(192);
        return out;
    }

    WorkingModel W{Ein, Pin};
    // integralize: u = 1/L
    {
        BigInt L = 1;
        for (auto& c : W.E.a) L = zlcm(L, c.get_den());
        if (L != 1) {
            // (x, y) -> (L^2 x, L^3 y): a_i scale by L^i; this is (u, r, s, t) = (1/L, 0, 0, 0)
            std::array<BigRat, 5> b;
            static const int w[5] = {1, 2, 3, 4, 6};
            for (int i = 0; i < 5; ++i) b[i] = W.E.a[i] * BigRat(zpow(L, w[i]));
            W.E = CurveQ::make(b);
            W.P = PointQ::of(W.P.x * BigRat(L * L), W.P.y * BigRat(L * L * L));
        }
    }

    // factor the discriminant; minimalize at every known prime
    BigInt D = W.E.delta.get_num();
    auto fac = factor_int(D, opt.factor_budget, opt.seed);
    out.flagged = !fac.complete;
    out.unknown = fac.unknown;

    std::vector<std::pair<BigInt, LocalRedQ>> bad; // odd bad primes
    LocalRedQ red2;
    bool have2 = false;
    for (auto& [p, e] : fac.factors) {
        std::array<BigInt, 5> ia;
        for (int i = 0; i < 5; ++i) ia[i] = W.E.a[i].get_num();
        auto rr = tate_q_int(ia, p);
        if (rr.u != 1 || rr.r != 0 || rr.s != 0 || rr.t != 0)
            W.transform(rr.u, rr.r, rr.s, rr.t);
        if (p == 2) {
            red2 = rr;
            have2 = true;
        } else if (!rr.good()) {
            bad.emplace_back(p, rr);
        }
    }
    if (!have2) {
        std::array<BigInt, 5> ia;
        for (int i = 0; i < 5; ++i) ia[i] = W.E.a[i].get_num();
        red2 = tate_q_int(ia, BigInt(2));
        if (red2.u != 1 || red2.r != 0 || red2.s != 0 || red2.t != 0)
            W.transform(red2.u, red2.r, red2.s, red2.t);
    }

    // escort multiple m: into E^0 at every known odd bad prime, into E^1 at 2
    long m = 1;
    auto lcm_long = [](long a, long b) { return a / std::__gcd(a, b) * b; };
    for (auto& [p, rr] : bad) m = lcm_long(m, rr.tamagawa);
    long m2 = red2.tamagawa * ns_points_mod2(red2.minimal);
    m = lcm_long(m, 1) * m2;

    PointQ Q = ec_mul(W.E, W.P, m);
    if (Q.infinity) { // torsion after all (order > 16 impossible over Q, but be safe)
        out.value = RI::exact_zero(192);
        return out;
    }

    // membership checks guaranteed by the group theory; violations are bugs
    for (auto& [p, rr] : bad) {
        if (qval(Q.x, p) >= 0 && point_is_singular_mod_p(W.E, Q, p))
            throw std::logic_error("canonical_height: escort multiple missed E^0");
    }
    if (!(qval(Q.x, BigInt(2)) <= -2))
        throw std::logic_error("canonical_height: escort multiple missed E^1 at 2");

    // widening for unfactored parts of the discriminant: the omitted non-
    // archimedean terms lie in [0, log(g)/3] where g collects the unknown
    // prime part of Res(Phi, Psi)
    std::vector<BigInt> Phi, Psi;
    duplication_polys(W.E, Phi, Psi);
    double pad_lo = 0.0;
    if (!fac.complete) {
        RatPoly phi, psi;
        {
            std::vector<BigRat> pc, qc;
            for (auto& c : Phi) pc.emplace_back(c);
            for (auto& c : Psi) qc.emplace_back(c);
            phi = RatPoly(pc);
            psi = RatPoly(qc);
        }
        BigInt res = resultant(phi, psi).get_num();
        BigInt g = 1;
        for (auto& u : fac.unknown) {
            BigInt uu = u;
            for (;;) {
                BigInt d = zgcd(res, uu);
                if (d == 1) break;
                g *= d;
                res /= d;
            }
        }
        pad_lo = mpz_sizeinbase(g.get_mpz_t(), 2) * 0.6931472 / 3.0 + 1.0;
    }

    // archimedean series with explicit global bound C_max on |c_inf|
    double sum_phi = 0, sum_psi = 0, s_phi_low = 0;
    for (size_t i = 0; i < Phi.size(); ++i) {
        double v = std::fabs(mpz_get_d(Phi[i].get_mpz_t()));
        sum_phi += v;
        if (i + 1 < Phi.size()) s_phi_low += v;
    }
    for (auto& c : Psi) sum_psi += std::fabs(mpz_get_d(c.get_mpz_t()));
    double Up = std::log(std::max(2.0, sum_phi + sum_psi));
    double X0 = std::max(2.0 * s_phi_low, 1.0);
    double Lo;
    {
        RatPoly phi, psi;
        std::vector<BigRat> pc, qc;
        for (auto& c : Phi) pc.emplace_back(c);
        for (auto& c : Psi) qc.emplace_back(c);
        phi = RatPoly(pc);
        psi = RatPoly(qc);
        RatPoly u, v;
        RatPoly g = xgcd(phi, psi, u, v);
        if (g.deg() != 0) throw std::logic_error("canonical_height: Phi, Psi not coprime");
        double norm = 0;
        for (auto& c : u.coeffs()) norm += std::fabs(c.get_d());
        for (auto& c : v.coeffs()) norm += std::fabs(c.get_d());
        Lo = -(std::log(std::max(norm, 1e-300)) + 7.0 * std::log(X0)) - 1.0;
        // c_inf >= min(log(1/2), Lo)
        Lo = std::min(Lo, std::log(0.5)) - 1.0;
    }
    double Cmax = std::max(Up, -Lo) + 1.0;

    double target = opt.eps * 0.5 * static_cast<double>(m) * static_cast<double>(m);
    long N = static_cast<long>(std::ceil(std::log(std::max(Cmax / (1.5 * target), 4.0)) /
                                         std::log(4.0))) + 2;

    mpfr_prec_t prec = 192;
    for (int attempt = 0; attempt < 12; ++attempt, prec *= 2) {
        try {
            // h(x0)
            RI h0(0, prec);
            {
                BigInt num = Q.x.get_num(), den = Q.x.get_den();
                BigInt mx = abs(num) > den ? abs(num) : den;
                h0 = RI::from_int(mx, prec).log();
            }
            RI S(0, prec);
            RI x = RI::from_rat(Q.x, prec);
            for (long n = 0; n < N; ++n) {
                RI u = eval_zpoly(Phi, x);
                RI v = eval_zpoly(Psi, x);
                RI mx = u.abs().vmax(v.abs());
                RI cinf = mx.log() - x.max1().log().mul2exp(2);
                S = S + cinf.mul2exp(-2 * (n + 1));
                x = u / v;
            }
            // geometric tail: |sum_{n>=N}| <= Cmax * 4^{-N} / 3
            RI tail = RI::hull(-Cmax, Cmax, prec).mul2exp(-2 * N) .div_ui(3);
            RI total = h0 + S + tail;
            if (pad_lo > 0) {
                // unfactored corrections enter non-positively
                RI padded(0, prec);
                mpfr_set(padded.hi, total.hi, MPFR_RNDU);
                RI b = RI::hull(0, pad_lo, prec);
                mpfr_sub(padded.lo, total.lo, b.hi, MPFR_RNDD);
                total = padded;
            }
            RI val = total / RI(m, prec) / RI(m, prec);
            if (val.width() <= opt.eps || attempt == 11) {
                out.value = val;
                return out;
            }
        } catch (const PrecisionLoss&) {
            // retry at higher precision
        }
        N += 4;
    }
    throw std::runtime_error("canonical_height: precision loop failed");
}

GramCertificate rank_certificate(const CurveQ& E, const std::vector<PointQ>& pts,
                                 const HeightOptions& opt) {
    GramCertificate out;
    size_t n = pts.size();
    // heights and pairwise sums
    std::vector<RI> h(n, RI(0));
    std::vector<std::vector<RI>> hsum(n, std::vector<RI>(n, RI(0)));
    for (size_t i = 0; i < n; ++i) {
        auto r = canonical_height(E, pts[i], opt);
        out.flagged |= r.flagged;
        h[i] = r.value;
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            auto r = canonical_height(E, ec_add(E, pts[i], pts[j]), opt);
            out.flagged |= r.flagged;
            hsum[i][j] = r.value;
        }
    out.gram.assign(n, std::vector<RI>(n, RI(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) out.gram[i][j] = h[i];
            else {
                const RI& s = i < j ? hsum[i][j] : hsum[j][i];
                out.gram[i][j] = (s - h[i] - h[j]).mul2exp(-1);
            }
        }
    // greedy: points ordered by height midpoint, extend while the minor
    // determinant interval excludes zero
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return h[a].mid() < h[b].mid(); });

    auto minor_det = [&](const std::vector<size_t>& idx) -> RI {
        size_t k = idx.size();
        std::vector<std::vector<RI>> M(k, std::vector<RI>(k, RI(0)));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) M[i][j] = out.gram[idx[i]][idx[j]];
        RI det(1);
        for (size_t c = 0; c < k; ++c) {
            // pivot: row with midpoint of largest magnitude
            size_t piv = c;
            double best = -1;
            for (size_t r2 = c; r2 < k; ++r2) {
                double v = std::fabs(M[r2][c].mid());
                if (v > best && !M[r2][c].contains_zero()) {
                    best = v;
                    piv = r2;
                }
            }
            if (M[piv][c].contains_zero()) return RI(0); // cannot certify
            if (piv != c) {
                std::swap(M[piv], M[c]);
                det = -det;
            }
            det = det * M[c][c];
            for (size_t r2 = c + 1; r2 < k; ++r2) {
                RI f = M[r2][c] / M[c][c];
                for (size_t c2 = c; c2 < k; ++c2) M[r2][c2] = M[r2][c2] - f * M[c][c2];
            }
        }
        return det;
    };

    std::vector<size_t> sel;
    RI best_det(0);
    for (size_t cand : order) {
        std::vector<size_t> trial = sel;
        trial.push_back(cand);
        RI d = minor_det(trial);
        if (!d.contains_zero()) {
            sel = trial;
            best_det = d;
        }
    }
    out.selected = sel;
    out.det = best_det;
    out.certified_rank = static_cast<long>(sel.size());
    return out;
}

} // namespace esd
