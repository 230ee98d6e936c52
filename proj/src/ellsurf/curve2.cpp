#include "ellsurf/curve2.hpp"
#include "algebra/zfactor.hpp"
#include "ellsurf/residue.hpp"
#include "ellsurf/tate_ff.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace esd {

namespace {

// ---- arithmetic on XPoly (polynomials in x over Q[t]) ----

void xtrim(XPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

XPoly xmul(const XPoly& a, const XPoly& b) {
    if (a.empty() || b.empty()) return {};
    XPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    xtrim(r);
    return r;
}

XPoly xadd(const XPoly& a, const XPoly& b) {
    XPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = r[i] + a[i];
        if (i < b.size()) r[i] = r[i] + b[i];
    }
    xtrim(r);
    return r;
}

XPoly xsub(const XPoly& a, const XPoly& b) {
    XPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = r[i] + a[i];
        if (i < b.size()) r[i] = r[i] - b[i];
    }
    xtrim(r);
    return r;
}

XPoly xscale(const XPoly& a, const BigRat& c) {
    XPoly r = a;
    for (auto& e : r) e = e * c;
    xtrim(r);
    return r;
}

} // namespace

XPoly division_polynomial(const RatPoly& A, const RatPoly& B, long p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("division_polynomial: odd p >= 3");
    // psi_n = y^{eps(n)} f_n(x), eps = (n even); y^2 -> F = x^3 + A x + B.
    // f stored for n up to p.
    long N = p + 2;
    std::vector<XPoly> f(N + 1);
    XPoly F = {B, A, RatPoly(), RatPoly(BigRat(1))};
    f[0] = {};                       // psi_0 = 0
    f[1] = {RatPoly(BigRat(1))};     // 1
    f[2] = {RatPoly(BigRat(2))};     // psi_2 = 2y
    f[3] = {-(A * A), B * BigRat(12), A * BigRat(6), RatPoly(), RatPoly(BigRat(3))};
    // psi_4 = 4y (x^6 + 5A x^4 + 20B x^3 - 5A^2 x^2 - 4AB x - 8B^2 - A^3)
    f[4] = {B * B * BigRat(-8) - A * A * A, (A * B) * BigRat(-4), (A * A) * BigRat(-5),
            B * BigRat(20), A * BigRat(5), RatPoly(), RatPoly(BigRat(1))};
    f[4] = xscale(f[4], BigRat(4));
    auto even = [](long n) { return n % 2 == 0; };
    for (long n = 5; n <= N; ++n) {
        if (n % 2 == 1) {
            long m = (n - 1) / 2;
            // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3
            XPoly t1 = xmul(f[m + 2], xmul(f[m], xmul(f[m], f[m])));
            XPoly t2 = xmul(f[m - 1], xmul(f[m + 1], xmul(f[m + 1], f[m + 1])));
            // y-powers: eps(m+2)+3eps(m) both terms equal; if odd total, one
            // factor of y^2 = F appears
            long ypow1 = (even(m + 2) ? 1 : 0) + 3 * (even(m) ? 1 : 0);
            long ypow2 = (even(m - 1) ? 1 : 0) + 3 * (even(m + 1) ? 1 : 0);
            if (ypow1 % 2 != ypow2 % 2) throw std::logic_error("divpoly parity");
            // reduce y^{2k} -> F^k
            for (long k = 0; k < ypow1 / 2; ++k) t1 = xmul(t1, F);
            for (long k = 0; k < ypow2 / 2; ++k) t2 = xmul(t2, F);
            // result must be y-free (eps(2m+1) = 0): parity ypow1 even required
            if (ypow1 % 2 != 0) throw std::logic_error("divpoly parity odd");
            f[n] = xsub(t1, t2);
        } else {
            long m = n / 2;
            // psi_{2m} = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2) / 2y:
            // both products carry y^{2 - eps(m)}, which cancels against the
            // eps(m) of psi_m and the division by y; no curve substitution
            long y1 = (even(m + 2) ? 1 : 0) + 2 * (even(m - 1) ? 1 : 0);
            long y2 = (even(m - 2) ? 1 : 0) + 2 * (even(m + 1) ? 1 : 0);
            if (y1 != y2) throw std::logic_error("divpoly even parity");
            XPoly t1 = xmul(f[m + 2], xmul(f[m - 1], f[m - 1]));
            XPoly t2 = xmul(f[m - 2], xmul(f[m + 1], f[m + 1]));
            f[n] = xscale(xmul(f[m], xsub(t1, t2)), BigRat(1, 2));
        }
    }
    return f[p];
}

namespace {

// all monic divisors of a squarefree-ish factorization of g over Q[t]
std::vector<RatPoly> monic_divisors(const RatPoly& g, int cap = 4096) {
    std::vector<RatPoly> out = {RatPoly(BigRat(1))};
    if (g.is_zero()) return out;
    auto fac = factor_q(g);
    for (auto& [h, m] : fac.factors) {
        size_t n = out.size();
        RatPoly pw(BigRat(1));
        for (int i = 1; i <= m; ++i) {
            pw = pw * h;
            for (size_t j = 0; j < n; ++j) {
                out.push_back(out[j] * pw);
                if (static_cast<int>(out.size()) > cap)
                    throw std::runtime_error("torsion gate: divisor explosion");
            }
        }
    }
    return out;
}

// does the cubic C(x) over Q[t] (constant leading coefficient) have a root in
// Q(t)? Roots are necessarily lambda * d(t) with d | c0 monic and lambda in Q.
bool has_rational_function_root(const XPoly& C) {
    const RatPoly& c0 = C[0];
    if (c0.is_zero()) return true; // x = 0 is a root
    for (auto& d : monic_divisors(c0)) {
        // C(lambda d) = sum_i C_i lambda^i d^i: grouped by powers of lambda
        // with Q[t] coefficients; need a common rational root lambda != 0 of
        // all t-coefficients
        std::vector<RatPoly> bylam(C.size());
        RatPoly dp(BigRat(1));
        for (size_t i = 0; i < C.size(); ++i) {
            bylam[i] = C[i] * dp;
            dp = dp * d;
        }
        // coefficient of t^k: polynomial in lambda; collect their gcd
        long maxdeg = 0;
        for (auto& b : bylam) maxdeg = std::max(maxdeg, b.deg());
        RatPoly lam_gcd;
        for (long k = 0; k <= maxdeg; ++k) {
            std::vector<BigRat> lc(C.size());
            for (size_t i = 0; i < C.size(); ++i) lc[i] = bylam[i].coeff(k);
            RatPoly lk(lc);
            if (lk.is_zero()) continue;
            lam_gcd = lam_gcd.is_zero() ? lk : gcd(lam_gcd, lk);
            if (lam_gcd.deg() == 0) break;
        }
        if (lam_gcd.is_zero()) return true; // identically zero: any lambda
        if (lam_gcd.deg() == 0) continue;
        for (auto& [r, m] : q_roots(lam_gcd))
            if (r != 0) return true;
    }
    return false;
}

// constant geometric roots: a common root over Qbar of all t-coefficients
bool has_constant_geometric_root(const XPoly& C) {
    long maxdeg = 0;
    for (auto& c : C) maxdeg = std::max(maxdeg, c.deg());
    RatPoly g;
    for (long k = 0; k <= maxdeg; ++k) {
        std::vector<BigRat> xc(C.size());
        for (size_t i = 0; i < C.size(); ++i) xc[i] = C[i].coeff(k);
        RatPoly gk(xc);
        if (gk.is_zero()) continue;
        g = g.is_zero() ? gk : gcd(g, gk);
        if (g.deg() == 0) return false;
    }
    return g.deg() >= 1;
}

// conjugate nonconstant polynomial roots over Qbar: only possible with three
// conjugate roots of equal degree D = deg(c0)/3; attempt the coefficient
// chain construction over the field of the leading coefficient
bool has_conjugate_polynomial_root(const XPoly& C) {
    const RatPoly& c0 = C[0];
    if (c0.is_zero() || c0.deg() % 3 != 0 || c0.deg() == 0) return false;
    long D = c0.deg() / 3;
    // leading form: coefficient of t^{3D} in C(r) with r = sum lambda_j t^j:
    // mu(lambda) = sum_i C_i-leading * lambda^i where only terms with
    // deg(C_i) + i*D == 3D contribute
    std::vector<BigRat> mu(C.size(), BigRat(0));
    for (size_t i = 0; i < C.size(); ++i) {
        if (C[i].is_zero()) continue;
        if (C[i].deg() + static_cast<long>(i) * D == 3 * D) mu[i] = C[i].lc();
    }
    RatPoly mupoly{std::vector<BigRat>(mu)};
    if (mupoly.deg() < 1) return false;
    auto fac = factor_q(mupoly);
    for (auto& [h, m] : fac.factors) {
        if (h.deg() != 3) continue; // conjugate-triple case needs a cubic field
        // construct r = lambda t^D + r_{D-1} t^{D-1} + ... over k' = Q[L]/(h)
        NFResidue k2(h);
        using E = NFResidue::Elem;
        std::vector<E> r(D + 1, RatPoly());
        r[D] = k2.reduce(RatPoly::x()); // lambda
        bool failed = false;
        // mu'(lambda) needed nonzero for the linear solves
        // coefficient extraction: C(r) as polynomial in t over k'
        auto eval_Ct = [&](long upto) {
            // returns coefficients of t^k, k in [0, 3D], of C(r)
            // r known up to index >= upto (lower coeffs may be zero still)
            std::vector<E> out(3 * D + 1, RatPoly());
            // powers of r
            std::vector<std::vector<E>> rp(C.size());
            rp[0] = {k2.of_int(1)};
            for (size_t i = 1; i < C.size(); ++i) {
                // rp[i] = rp[i-1] * r
                const auto& prev = rp[i - 1];
                std::vector<E> cur(prev.size() + D, RatPoly());
                for (size_t a = 0; a < prev.size(); ++a)
                    for (long b = 0; b <= D; ++b)
                        cur[a + b] = k2.add(cur[a + b], k2.mul(prev[a], r[b]));
                rp[i] = cur;
            }
            for (size_t i = 0; i < C.size(); ++i) {
                for (long k = 0; k <= C[i].deg(); ++k) {
                    E ci = k2.of_rat(C[i].coeff(k));
                    for (size_t a = 0; a < rp[i].size(); ++a) {
                        long deg = k + static_cast<long>(a);
                        if (deg <= 3 * D)
                            out[deg] = k2.add(out[deg], k2.mul(ci, rp[i][a]));
                    }
                }
            }
            (void)upto;
            return out;
        };
        // derivative of mu at lambda (for the linear steps)
        E dmu = k2.of_int(0);
        {
            RatPoly dm = mupoly.derivative();
            dmu = k2.reduce(dm); // dm(lambda) = dm mod h... evaluate: dm(L)
            // evaluate dm at the class of x: dm has rational coefficients in L
            E acc = k2.of_int(0);
            E lam = k2.reduce(RatPoly::x());
            for (long i = dm.deg(); i >= 0; --i)
                acc = k2.add(k2.mul(acc, lam), k2.of_rat(dm.coeff(i)));
            dmu = acc;
        }
        if (k2.is_zero(dmu)) continue; // degenerate; cannot decide this branch
        for (long idx = D - 1; idx >= 0; --idx) {
            // impose coefficient of t^{2D + idx} equal zero; it is linear in
            // r[idx] with slope dmu (up to combinatorics), solve by one Newton
            // style step: evaluate with r[idx] = 0 and with r[idx] = 1
            r[idx] = k2.of_int(0);
            auto v0 = eval_Ct(idx);
            E f0 = v0[2 * D + idx];
            r[idx] = k2.of_int(1);
            auto v1 = eval_Ct(idx);
            E f1 = v1[2 * D + idx];
            E slope = k2.sub(f1, f0);
            if (k2.is_zero(slope)) {
                failed = true;
                break;
            }
            r[idx] = k2.neg(k2.mul(f0, k2.inv(slope)));
        }
        if (failed) continue;
        auto v = eval_Ct(0);
        bool allzero = true;
        for (auto& e : v) allzero &= k2.is_zero(e);
        if (allzero) return true;
    }
    return false;
}

} // namespace

CurveModel torsion_curve(const SurfaceQ& s, long p) {
    CurveModel out;
    out.p = p;
    if (p == 2) {
        XPoly C = {s.b6, s.b4 * BigRat(2), s.b2, RatPoly(BigRat(4))};
        // primitive normalization across all coefficients
        BigInt num_gcd = 0, den_lcm = 1;
        for (auto& c : C)
            for (auto& a : c.coeffs()) {
                if (a == 0) continue;
                num_gcd = zgcd(num_gcd, a.get_num());
                den_lcm = zlcm(den_lcm, a.get_den());
            }
        BigRat content(num_gcd, den_lcm);
        content.canonicalize();
        for (auto& c : C) c = c * (BigRat(1) / content);
        out.defining = C;
        out.map_degree = 3;
        // geometric integrality gate
        if (has_rational_function_root(C) || has_constant_geometric_root(C) ||
            has_conjugate_polynomial_root(C))
            throw ReducibleTorsion("torsion_curve: E[2] is reducible over the closure");
        out.geom = CurveModel::Integral;
        return out;
    }
    if (p % 2 == 0 || p < 3) throw std::invalid_argument("torsion_curve: p = 2 or odd prime");
    if (!s.a1.is_zero() || !s.a2.is_zero() || !s.a3.is_zero())
        out.defining = division_polynomial(s.A, s.B, p);
    else
        out.defining = division_polynomial(s.a4, s.a6, p);
    out.map_degree = p * p - 1;
    out.geom = CurveModel::Unverified;
    return out;
}

CurveModel torsion_curve_fq(const SurfaceFq& s, long p) {
    CurveModel out;
    out.p = p;
    if (p != 2) throw std::invalid_argument("torsion_curve_fq: only p = 2 is modeled over F_q");
    uint64_t q = s.F->p();
    // gate: polynomial roots of 4x^3 + b2 x^2 + 2 b4 x + b6 over F_{q^m}[t],
    // m <= 3, found by divisor enumeration (leading coefficient is constant)
    for (unsigned m = 1; m <= 3; ++m) {
        auto Fm = m == 1 ? s.F : FqCtx::make(q, m);
        // lift the coefficients into F_{q^m}[t] (base-field coefficients embed
        // as constants)
        auto lift_poly = [&](const FqPoly& c) {
            std::vector<FqElem> cc;
            for (long i = 0; i <= c.deg(); ++i) cc.push_back(Fm->from_base(c.coeff(i)[0]));
            return FqPoly(Fm, std::move(cc));
        };
        std::vector<FqPoly> C = {lift_poly(s.b6), lift_poly(s.b4).mul_elem(Fm->from_base(2)),
                                 lift_poly(s.b2), FqPoly::constant(Fm, Fm->from_base(4))};
        const FqPoly& c0 = C[0];
        if (c0.is_zero()) throw ReducibleTorsion("torsion_curve: x = 0 is a 2-torsion root");
        // monic divisors of c0 over F_{q^m}
        auto fac = factor_fq(c0);
        std::vector<FqPoly> divisors = {FqPoly::constant(Fm, Fm->one())};
        for (auto& [h, mult] : fac.factors) {
            size_t n = divisors.size();
            FqPoly pw = FqPoly::constant(Fm, Fm->one());
            for (int i = 1; i <= mult; ++i) {
                pw = pw * h;
                for (size_t j = 0; j < n; ++j) {
                    divisors.push_back(divisors[j] * pw);
                    if (divisors.size() > 4096)
                        throw std::runtime_error("torsion gate: divisor explosion");
                }
            }
        }
        if (Fm->q() > 4096) throw std::runtime_error("torsion gate: residue field too large");
        for (auto& d : divisors) {
            for (uint64_t li = 1; li < Fm->q().get_ui(); ++li) {
                FqElem lam = Fm->element_of_index(li);
                FqPoly r = d.mul_elem(lam);
                // evaluate C at x = r
                FqPoly acc(Fm);
                for (size_t i = C.size(); i-- > 0;) acc = acc * r + C[i];
                if (acc.is_zero())
                    throw ReducibleTorsion("torsion_curve: cubic has a root over the closure");
            }
        }
    }
    out.map_degree = 3;
    out.geom = CurveModel::Integral;
    return out;
}

namespace {

// ramification partition of a cubic (or lower-degree tail) over the local
// field of `loc`; Newton polygon with residual factorization, recursing on
// repeated rational residual roots. If positive_only, report only the places
// corresponding to roots of positive valuation.
template <class Local>
void ram_rec(const std::vector<typename Local::Poly>& C, const Local& loc, bool positive_only,
             int depth, std::vector<long>& out) {
    if (depth > 64) throw std::logic_error("ramification: recursion runaway");
    long n = static_cast<long>(C.size()) - 1;
    while (n >= 0 && loc.val(C[n]) >= kValInf) --n;
    if (n <= 0) return;
    // Newton polygon lower hull of (i, val(C_i)), i = 0..n
    std::vector<std::pair<long, long>> pts;
    for (long i = 0; i <= n; ++i) {
        long v = loc.val(C[i]);
        if (v < kValInf) pts.emplace_back(i, v);
    }
    // lower convex hull (by increasing i)
    std::vector<std::pair<long, long>> hull;
    for (auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // remove b if it is above the segment a-pt
            if ((b.second - a.second) * (pt.first - a.first) >=
                (pt.second - a.second) * (b.first - a.first))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    // segments: slope = (v2 - v1)/(i2 - i1); root valuation = -slope
    for (size_t si = 0; si + 1 < hull.size(); ++si) {
        long i1 = hull[si].first, v1 = hull[si].second;
        long i2 = hull[si + 1].first, v2 = hull[si + 1].second;
        long rise = v2 - v1, run = i2 - i1;
        // root valuation mu = -(rise)/(run) = (v1 - v2)/run
        long num = v1 - v2, den = run;
        if (positive_only && num <= 0) continue;
        long g = std::__gcd(std::labs(num) == 0 ? den : std::labs(num), den);
        long e = den / std::max(g, 1L);
        if (num == 0) e = 1;
        if (e > 1) {
            // totally ramified piece(s) of index e; residual degree run/e = 1
            for (long rep = 0; rep < run / e; ++rep) out.push_back(e);
            continue;
        }
        long h = num / den; // integer root valuation
        // residual polynomial R(Y) = sum_{j in segment} res(C_j / pi^{L(j)}) Y^{j-i1}
        std::vector<typename Local::Elem> R;
        for (long j = i1; j <= i2; ++j) {
            long L = v1 + (j - i1) * (v2 - v1) / run;
            // on-segment level; coefficients above the line reduce to zero
            long vj = loc.val(C[j]);
            if (vj > L || vj >= kValInf) R.push_back(loc.R.of_int(0));
            else R.push_back(loc.resk(C[j], L));
        }
        auto roots = loc.R.roots(R);
        long root_degrees = 0;
        for (auto& [r, mult] : roots) {
            root_degrees += mult;
            if (mult == 1) {
                out.push_back(1); // unramified rational point
                continue;
            }
            // repeated rational residual root: substitute x = pi^h (r + x')
            auto Rlift = loc.lift(r);
            auto shift = loc.pi_pow(std::max(h, 0L));
            // for h >= 0 (true here when recursing: positive_only or top-level
            // integral coefficients): x = pi^h * (Rlift + x')
            std::vector<typename Local::Poly> C2(C.size());
            // C2 = C(pi^h (Rlift + x')) expanded in x'
            // first substitute x = pi^h * u
            std::vector<typename Local::Poly> Cu(C.size());
            {
                auto pw = loc.pi_pow(0);
                for (size_t i = 0; i < C.size(); ++i) {
                    Cu[i] = C[i] * pw;
                    if (i + 1 < C.size()) pw = pw * shift;
                }
            }
            // then u = Rlift + x': binomial expansion
            for (auto& c : C2) c = typename Local::Poly();
            {
                // Horner from the top
                std::vector<typename Local::Poly> acc;
                for (size_t i = Cu.size(); i-- > 0;) {
                    // acc = acc * (x + Rlift) + Cu[i]
                    std::vector<typename Local::Poly> next(acc.size() + 1);
                    for (size_t a2 = 0; a2 < acc.size(); ++a2) {
                        next[a2 + 1] = next[a2 + 1] + acc[a2];
                        next[a2] = next[a2] + acc[a2] * Rlift;
                    }
                    if (next.empty()) next.resize(1);
                    next[0] = next[0] + Cu[i];
                    acc = std::move(next);
                }
                C2 = std::move(acc);
            }
            ram_rec(C2, loc, true, depth + 1, out);
        }
        // residual irreducible factors of degree > 1 (multiplicity-free for
        // cubics): unramified places of that residue degree
        long rdeg = static_cast<long>(R.size()) - 1;
        while (rdeg >= 0 && loc.R.is_zero(R[rdeg])) --rdeg;
        long remaining = rdeg - root_degrees;
        // 'remaining' splits into irreducible residual factors, each giving an
        // unramified place of residue degree = its degree; for the partition we
        // emit 1 per geometric point
        for (long i = 0; i < remaining; ++i) out.push_back(1);
    }
}

template <class Local>
std::vector<long> ram_partition(const std::vector<typename Local::Poly>& C, const Local& loc) {
    std::vector<long> out;
    ram_rec(C, loc, false, 0, out);
    std::sort(out.rbegin(), out.rend());
    long sum = 0;
    for (long e : out) sum += e;
    if (sum != 3) throw std::logic_error("ramification: partition does not sum to 3");
    return out;
}

std::vector<RatPoly> cubic_coeffs_q(const CurveModel& c) {
    if (c.p != 2 || c.defining.empty())
        throw std::invalid_argument("ramification_profile: p = 2 plane cubic required");
    return c.defining;
}

} // namespace

std::vector<long> ramification_profile_q(const CurveModel& c, const RatPoly& pi) {
    QLocal loc(pi.monic());
    return ram_partition(cubic_coeffs_q(c), loc);
}

std::vector<long> ramification_profile_q_infinity(const CurveModel& c) {
    auto C = cubic_coeffs_q(c);
    long maxdeg = 0;
    for (auto& e : C) maxdeg = std::max(maxdeg, e.deg());
    std::vector<RatPoly> Ci;
    for (auto& e : C) Ci.push_back(e.is_zero() ? RatPoly() : e.reverse(maxdeg));
    QLocal loc(RatPoly::x());
    return ram_partition(Ci, loc);
}

namespace {

std::vector<FqPoly> fq_cubic(const SurfaceFq& s) {
    return {s.b6, s.b4.mul_elem(s.F->from_base(2)), s.b2,
            FqPoly::constant(s.F, s.F->from_base(4))};
}

} // namespace

std::vector<long> ramification_profile_fq(const SurfaceFq& s, const CurveModel& c, const FqPoly& pi) {
    (void)c;
    FqLocal loc(s.F, pi.monic());
    return ram_partition(fq_cubic(s), loc);
}

std::vector<long> ramification_profile_fq_infinity(const SurfaceFq& s, const CurveModel& c) {
    (void)c;
    auto C = fq_cubic(s);
    long maxdeg = 0;
    for (auto& e : C) maxdeg = std::max(maxdeg, e.deg());
    std::vector<FqPoly> Ci;
    for (auto& e : C) {
        if (e.is_zero()) {
            Ci.push_back(FqPoly(s.F));
            continue;
        }
        std::vector<FqElem> v(static_cast<size_t>(maxdeg) + 1, s.F->zero());
        for (long i = 0; i <= e.deg(); ++i) v[maxdeg - i] = e.coeff(i);
        Ci.push_back(FqPoly(s.F, std::move(v)));
    }
    FqLocal loc(s.F, FqPoly::x(s.F));
    return ram_partition(Ci, loc);
}

} // namespace esd
