#include "algebra/zfactor.hpp"
#include "algebra/fqpoly.hpp"
#include "algebra/intfactor.hpp"

#include <algorithm>
#include <stdexcept>

namespace esd {

namespace {

// ---- arithmetic for integer polynomials modulo m (vectors of BigInt in [0,m)) ----

using ZV = std::vector<BigInt>;

void zv_trim(ZV& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZV zv_mul(const ZV& a, const ZV& b, const BigInt& m) {
    if (a.empty() || b.empty()) return {};
    ZV r(a.size() + b.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    for (auto& c : r) c = zmod(c, m);
    zv_trim(r);
    return r;
}

ZV zv_add(const ZV& a, const ZV& b, const BigInt& m) {
    ZV r(std::max(a.size(), b.size()), BigInt(0));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
        r[i] = zmod(r[i], m);
    }
    zv_trim(r);
    return r;
}

ZV zv_scale(const ZV& a, const BigInt& s, const BigInt& m) {
    ZV r(a);
    for (auto& c : r) c = zmod(c * s, m);
    zv_trim(r);
    return r;
}

// remainder mod monic divisor g
ZV zv_rem_monic(ZV a, const ZV& g, const BigInt& m) {
    zv_trim(a);
    size_t dg = g.size() - 1;
    while (a.size() > dg) {
        BigInt lead = a.back();
        size_t sh = a.size() - 1 - dg;
        if (lead != 0)
            for (size_t i = 0; i < g.size(); ++i)
                a[sh + i] = zmod(a[sh + i] - lead * g[i], m);
        a.pop_back();
        zv_trim(a);
        if (a.size() <= dg) break;
    }
    return a;
}

ZV ratpoly_to_zv(const RatPoly& f, const BigInt& m) {
    ZV r;
    r.reserve(f.coeffs().size());
    for (auto& c : f.coeffs()) r.push_back(zmod(c.get_num(), m)); // integral input expected
    zv_trim(r);
    return r;
}

RatPoly zv_to_ratpoly_symmetric(const ZV& a, const BigInt& m) {
    std::vector<BigRat> c;
    BigInt half = m / 2;
    c.reserve(a.size());
    for (auto& x : a) {
        BigInt v = x;
        if (v > half) v -= m;
        c.emplace_back(v);
    }
    return RatPoly(std::move(c));
}

ZV fqpoly_to_zv(const FqPoly& f) {
    ZV r;
    for (long i = 0; i <= f.deg(); ++i) r.emplace_back(static_cast<unsigned long>(f.coeff(i)[0]));
    zv_trim(r);
    return r;
}

// ---- multifactor linear Hensel lifting ----
//
// Invariant: F == lc * prod(g_i) mod p^k, g_i monic. The Bezout data over F_p
// (u_i = inverse of lc*prod_{j!=i} g_j modulo g_i) is fixed throughout.
struct HenselState {
    BigInt p;
    BigInt pk; // current modulus
    ZV F;      // integer coefficients of the primitive polynomial
    BigInt lc;
    std::vector<ZV> g;  // monic factors mod pk
    std::vector<ZV> u;  // Bezout inverses mod p
};

void hensel_step(HenselState& st) {
    BigInt pk1 = st.pk * st.p;
    // e = (F - lc*prod g)/p^k mod p
    ZV prod = {zmod(st.lc, pk1)};
    for (auto& gi : st.g) prod = zv_mul(prod, gi, pk1);
    ZV diff(std::max(st.F.size(), prod.size()), BigInt(0));
    for (size_t i = 0; i < diff.size(); ++i) {
        BigInt v = 0;
        if (i < st.F.size()) v += st.F[i];
        if (i < prod.size()) v -= prod[i];
        diff[i] = zmod(v, pk1);
    }
    ZV e;
    e.reserve(diff.size());
    for (auto& c : diff) e.push_back(zmod(zdivexact(c, st.pk), st.p));
    zv_trim(e);
    if (e.empty()) {
        st.pk = pk1;
        return;
    }
    for (size_t i = 0; i < st.g.size(); ++i) {
        ZV gi_p = st.g[i];
        for (auto& c : gi_p) c = zmod(c, st.p);
        zv_trim(gi_p);
        ZV delta = zv_rem_monic(zv_mul(e, st.u[i], st.p), gi_p, st.p);
        // g_i += p^k * delta
        ZV gi = st.g[i];
        if (gi.size() < gi_p.size()) gi.resize(gi_p.size(), BigInt(0));
        for (size_t j = 0; j < delta.size(); ++j)
            gi[j] = zmod(gi[j] + st.pk * delta[j], pk1);
        for (auto& c : gi) c = zmod(c, pk1);
        st.g[i] = gi;
    }
    st.pk = pk1;
}

// ---- recombination ----

struct Recombiner {
    BigInt pk;
    RatPoly remaining;           // primitive integer polynomial
    std::vector<ZV> factors;     // monic mod pk
    uint64_t budget;
    bool exceeded = false;
    std::vector<RatPoly> found;  // primitive irreducible integer factors

    bool try_subset(const std::vector<size_t>& idx) {
        if (budget == 0) {
            exceeded = true;
            return false;
        }
        --budget;
        BigInt lc = remaining.lc().get_num();
        ZV cand = {zmod(lc, pk)};
        for (size_t i : idx) cand = zv_mul(cand, factors[i], pk);
        RatPoly g = zv_to_ratpoly_symmetric(cand, pk);
        if (g.is_zero()) return false;
        g = g.primitive();
        if (g.deg() < 1) return false;
        // exact division test over Q (coefficients integral, primitive)
        RatPoly q, r;
        RatPoly::divmod(remaining, g, q, r);
        if (!r.is_zero()) return false;
        found.push_back(g);
        remaining = q.primitive();
        return true;
    }

    void run() {
        // subsets in increasing cardinality; a found factor is irreducible
        for (;;) {
            size_t n = factors.size();
            if (n == 0) break;
            bool found_any = false;
            for (size_t card = 1; 2 * card <= n && !found_any && !exceeded; ++card) {
                std::vector<size_t> idx(card);
                for (size_t i = 0; i < card; ++i) idx[i] = i;
                for (;;) {
                    if (try_subset(idx)) {
                        // remove used indices
                        std::vector<ZV> nf;
                        size_t k = 0;
                        for (size_t i = 0; i < factors.size(); ++i) {
                            if (k < idx.size() && idx[k] == i) { ++k; continue; }
                            nf.push_back(factors[i]);
                        }
                        factors = std::move(nf);
                        found_any = true;
                        break;
                    }
                    if (exceeded) break;
                    // next combination
                    long pos = static_cast<long>(card) - 1;
                    while (pos >= 0 && idx[pos] == n - card + pos) --pos;
                    if (pos < 0) break;
                    ++idx[pos];
                    for (size_t j = pos + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
                }
            }
            if (exceeded) break;
            if (!found_any) {
                // remaining polynomial is irreducible
                if (remaining.deg() > 0) found.push_back(remaining);
                remaining = RatPoly(BigRat(1));
                factors.clear();
                break;
            }
            if (remaining.deg() == 0) break;
        }
    }
};

// Factor a primitive squarefree integer polynomial, deg >= 1.
void factor_squarefree(const RatPoly& F, uint64_t subset_budget, uint64_t seed,
                       std::vector<RatPoly>& irreducible, std::vector<RatPoly>& unresolved) {
    if (F.deg() == 1) {
        irreducible.push_back(F);
        return;
    }
    // choose a prime: squarefree reduction, same degree; prefer few factors
    static const std::vector<uint64_t> primes = [] {
        auto v = primes_up_to(3000);
        return std::vector<uint64_t>(v.begin() + 2, v.end()); // skip 2, 3
    }();
    BigInt lc = F.lc().get_num();
    struct Best {
        uint64_t p = 0;
        FqFactorization fac;
    } best;
    int tried = 0;
    for (uint64_t p : primes) {
        if (zmod(lc, BigInt(static_cast<unsigned long>(p))) == 0) continue;
        auto Fp = FqCtx::prime_field(p);
        FqPoly fbar = FqPoly::from_ratpoly(Fp, F);
        if (fbar.deg() != F.deg()) continue;
        if (fq_gcd(fbar, fbar.derivative()).deg() != 0) continue;
        auto fac = factor_fq(fbar, seed);
        if (best.p == 0 || fac.factors.size() < best.fac.factors.size()) {
            best.p = p;
            best.fac = fac;
        }
        if (++tried >= 4 || best.fac.factors.size() == 1) break;
    }
    if (best.p == 0) throw std::runtime_error("factor_q: no good prime found");
    if (best.fac.factors.size() == 1) {
        irreducible.push_back(F);
        return;
    }
    // Landau-Mignotte style bound: |coeff of lc*g| <= 2^n * ||F||_2 * |lc|
    BigInt norm2sq = 0;
    for (auto& c : F.coeffs()) norm2sq += c.get_num() * c.get_num();
    BigInt norm2;
    mpz_sqrt(norm2.get_mpz_t(), norm2sq.get_mpz_t());
    norm2 += 1;
    BigInt bound = (norm2 * abs(lc)) << static_cast<unsigned long>(F.deg() + 1);
    bound = 2 * bound + 1;

    HenselState st;
    st.p = BigInt(static_cast<unsigned long>(best.p));
    st.pk = st.p;
    for (auto& c : F.coeffs()) st.F.push_back(c.get_num());
    st.lc = lc;
    auto Fp = FqCtx::prime_field(best.p);
    std::vector<FqPoly> gbar;
    for (auto& [g, m] : best.fac.factors) gbar.push_back(g); // m == 1 (squarefree)
    // Bezout data over F_p: u_i = (lc * prod_{j!=i} gbar_j)^{-1} mod gbar_i
    for (size_t i = 0; i < gbar.size(); ++i) {
        FqPoly prod = FqPoly::constant(Fp, Fp->from_int(lc));
        for (size_t j = 0; j < gbar.size(); ++j)
            if (j != i) prod = (prod * gbar[j]).mod(gbar[i]);
        // invert mod gbar_i by extended Euclid in F_p[x]
        FqPoly a = prod.mod(gbar[i]), b = gbar[i];
        FqPoly u0 = FqPoly::constant(Fp, Fp->one()), u1(Fp);
        FqPoly r0 = a, r1 = b;
        while (!r1.is_zero()) {
            FqPoly q, r;
            FqPoly::divmod(r0, r1, q, r);
            r0 = r1;
            r1 = r;
            FqPoly u2 = u0 - q * u1;
            u0 = u1;
            u1 = u2;
        }
        if (r0.deg() != 0) throw std::runtime_error("factor_q: factors not coprime");
        FqPoly inv = u0.mul_elem(Fp->inv(r0.coeff(0)));
        st.g.push_back(fqpoly_to_zv(gbar[i]));
        st.u.push_back(fqpoly_to_zv(inv.mod(gbar[i])));
    }
    while (st.pk < bound) hensel_step(st);

    Recombiner rec;
    rec.pk = st.pk;
    rec.remaining = F;
    rec.factors = st.g;
    rec.budget = subset_budget;
    rec.run();
    for (auto& g : rec.found) irreducible.push_back(g);
    if (rec.exceeded && rec.remaining.deg() > 0) unresolved.push_back(rec.remaining);
}

} // namespace

QFactorization factor_q(const RatPoly& f, uint64_t subset_budget, uint64_t seed) {
    if (f.is_zero()) throw std::domain_error("factor_q: zero polynomial");
    QFactorization out;
    if (f.deg() < 1) {
        out.unit = f.coeff(0);
        return out;
    }
    out.unit = f.lc();
    auto sq = squarefree_decomposition(f);
    for (auto& [part, mult] : sq) {
        RatPoly P = part.primitive(); // integral primitive
        std::vector<RatPoly> irr, unres;
        factor_squarefree(P, subset_budget, seed, irr, unres);
        for (auto& g : irr) out.factors.emplace_back(g.monic(), mult);
        for (auto& g : unres) {
            out.unresolved.emplace_back(g.monic(), mult);
            out.complete = false;
        }
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
        for (long i = a.first.deg(); i >= 0; --i) {
            BigRat ca = a.first.coeff(i), cb = b.first.coeff(i);
            if (ca != cb) return ca < cb;
        }
        return a.second < b.second;
    });
    return out;
}

bool q_is_irreducible(const RatPoly& f, uint64_t subset_budget) {
    if (f.deg() < 1) return false;
    auto fac = factor_q(f, subset_budget);
    if (!fac.complete) throw BudgetExceeded("q_is_irreducible: recombination budget exceeded");
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

std::vector<std::pair<BigRat, int>> q_roots(const RatPoly& f) {
    std::vector<std::pair<BigRat, int>> out;
    if (f.deg() < 1) return out;
    RatPoly P = f.primitive();
    // rational root test: num | constant, den | leading (on the primitive part)
    // via factoring the two integers
    BigInt c0 = 0;
    for (long i = 0; i <= P.deg(); ++i) {
        if (P.coeff(i) != 0) {
            c0 = P.coeff(i).get_num();
            break;
        }
    }
    // strip powers of x first
    long xmult = 0;
    RatPoly Q = P;
    while (Q.coeff(0) == 0 && Q.deg() > 0) {
        Q = Q.divexact(RatPoly::x());
        ++xmult;
    }
    if (xmult > 0) out.emplace_back(BigRat(0), static_cast<int>(xmult));
    if (Q.deg() < 1) return out;
    BigInt a0 = Q.coeff(0).get_num();
    BigInt an = Q.lc().get_num();
    auto fa0 = factor_int(abs(a0));
    auto fan = factor_int(abs(an));
    if (!fa0.complete || !fan.complete) throw BudgetExceeded("q_roots: cannot factor endpoints");
    // enumerate divisors
    auto divisors = [](const IntFactorization& f) {
        std::vector<BigInt> out{BigInt(1)};
        for (auto& [p, e] : f.factors) {
            size_t n = out.size();
            BigInt pw = 1;
            for (int i = 1; i <= e; ++i) {
                pw *= p;
                for (size_t j = 0; j < n; ++j) out.push_back(out[j] * pw);
            }
        }
        return out;
    };
    auto dn = divisors(fa0), dd = divisors(fan);
    for (auto& num : dn)
        for (auto& den : dd)
            for (int sgn : {1, -1}) {
                BigRat r(sgn * num, den);
                r.canonicalize();
                if (Q.eval(r) == 0) {
                    int m = 0;
                    RatPoly lin({-r, BigRat(1)}), q, rem;
                    RatPoly h = Q;
                    for (;;) {
                        RatPoly::divmod(h, lin, q, rem);
                        if (!rem.is_zero()) break;
                        h = q;
                        ++m;
                    }
                    if (m > 0) {
                        bool seen = false;
                        for (auto& [rr, mm] : out) seen |= (rr == r);
                        if (!seen) out.emplace_back(r, m);
                    }
                }
            }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return out;
}

} // namespace esd
