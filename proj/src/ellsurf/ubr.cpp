#include "ellsurf/ubr.hpp"
#include "algebra/intfactor.hpp"
#include "algebra/zfactor.hpp"
#include "ellsurf/tate_ff.hpp"
#include "ellsurf/tate_q.hpp"

#include <deque>
#include <set>
#include <stdexcept>

namespace esd {

namespace {

// the five coefficient polynomials of a chart, kept integral
struct Chart {
    std::array<RatPoly, 5> a; // a1, a2, a3, a4, a6
    RatPoly delta;

    std::array<BigRat, 5> fiber(const BigRat& t0) const {
        std::array<BigRat, 5> out;
        for (int i = 0; i < 5; ++i) out[i] = a[i].eval(t0);
        return out;
    }
};

Chart finite_chart(const SurfaceQ& s) {
    Chart c;
    c.a = {s.a1, s.a2, s.a3, s.a4, s.a6};
    c.delta = s.delta;
    return c;
}

Chart infinite_chart(const SurfaceQ& s) {
    // t = 1/u, (x, y) -> (x/u^{2m}, y/u^{3m}) with minimal clearing m
    static const int w[5] = {1, 2, 3, 4, 6};
    std::array<RatPoly, 5> a = {s.a1, s.a2, s.a3, s.a4, s.a6};
    long m = 0;
    for (int i = 0; i < 5; ++i) {
        if (a[i].is_zero()) continue;
        long need = (a[i].deg() + w[i] - 1) / w[i];
        m = std::max(m, need);
    }
    Chart c;
    for (int i = 0; i < 5; ++i)
        c.a[i] = a[i].is_zero() ? RatPoly() : a[i].reverse(w[i] * m);
    SurfaceQ sp = SurfaceQ::make(c.a[0], c.a[1], c.a[2], c.a[3], c.a[4]);
    c.delta = sp.delta;
    return c;
}

long vdelta_min_at(const std::array<BigRat, 5>& fiber, const BigInt& p) {
    return tate_q(fiber, p).v_delta_min;
}

// closure of the tail along a rational root rho of Delta (v_p(rho) >= 0):
// for v_p(t - rho) = l > e0 the fiber discriminant valuation is exactly
// e0 + mu*l; closed when that is never 0 mod 12
struct RootChain {
    BigRat rho;
    long mu;      // multiplicity of rho in Delta
    long e0;      // v_p of the first nonvanishing derivative coefficient
    bool closed;  // tail provably all-bad
};

} // namespace

bool verify_good_fiber(const SurfaceQ& s, const BigRat& t0, const BigInt& p) {
    Chart c = finite_chart(s);
    if (c.delta.eval(t0) == 0) return false;
    return tate_q(c.fiber(t0), p).good();
}

std::vector<UbrVerdict> ubr_primes(const SurfaceQ& s, long depth, uint64_t seed) {
    if (!s.integral())
        throw std::invalid_argument("ubr_primes: integral model required (a_i in Z[t])");
    std::vector<UbrVerdict> out;
    const RatPoly& delta = s.delta;
    // candidate primes
    std::set<BigInt> candidates;
    long dd = delta.deg();
    for (uint64_t p : primes_up_to(static_cast<uint64_t>(std::max(dd, 2L))))
        if (static_cast<long>(p) <= dd) candidates.insert(BigInt(static_cast<unsigned long>(p)));
    {
        BigInt cont = abs(delta.content().get_num());
        auto fc = factor_int(cont, 2'000'000, seed);
        for (auto& [p, e] : fc.factors) candidates.insert(p);
        if (!fc.complete) {
            for (auto& u : fc.unknown) {
                UbrVerdict v;
                v.kind = UbrVerdict::UNKNOWN;
                v.prime = u;
                v.note = "unfactored content cofactor";
                out.push_back(v);
            }
        }
    }

    Chart charts[2] = {finite_chart(s), infinite_chart(s)};

    for (const BigInt& p : candidates) {
        UbrVerdict verdict;
        verdict.prime = p;
        bool found_witness = false;
        bool any_open = false;

        for (int chart_id = 0; chart_id < 2 && !found_witness; ++chart_id) {
            const Chart& C = charts[chart_id];
            // rational root chains with their tail closures
            std::vector<RootChain> chains;
            for (auto& [rho, mu] : q_roots(C.delta)) {
                if (rho != 0 && qval(rho, p) < 0) continue; // not in this p-adic chart
                RootChain rc;
                rc.rho = rho;
                rc.mu = mu;
                RatPoly shifted = C.delta.shift(rho); // Delta(rho + Y) = Y^mu h(Y)
                RatPoly h = shifted;
                for (int i = 0; i < mu; ++i) h = h.divexact(RatPoly::x());
                long e0 = qval(h.coeff(0), p);
                rc.e0 = e0 < 0 ? 0 : e0;
                rc.closed = true;
                long g = std::__gcd(rc.mu % 12 == 0 ? 12L : rc.mu % 12, 12L);
                for (long l = rc.e0 + 1; l <= rc.e0 + 12 / std::max(g, 1L) + 12; ++l)
                    if ((rc.e0 + rc.mu * l) % 12 == 0) rc.closed = false;
                chains.push_back(rc);
            }
            // BFS over residue classes (c mod p^j); chart 1 explores only the
            // classes with s = 0 mod p (t-integral fibers live in chart 0)
            struct Node {
                BigInt c;
                long j;
            };
            std::deque<Node> queue;
            if (chart_id == 0) {
                queue.push_back({BigInt(0), 0}); // all of Z_p
            } else {
                queue.push_back({BigInt(0), 1}); // s = 0 mod p
            }
            long processed = 0;
            while (!queue.empty() && !found_witness) {
                if (++processed > 20000) { // runaway guard: report honestly
                    any_open = true;
                    break;
                }
                Node nd = queue.front();
                queue.pop_front();
                // tail closure: inside a closed rational-root chain?
                bool closed_by_chain = false;
                for (auto& rc : chains) {
                    if (!rc.closed) continue;
                    // class is c mod p^j; contained in the tail if
                    // v_p(c - rho) >= j (class center congruent) and j > e0
                    BigRat d = BigRat(nd.c) - rc.rho;
                    if (nd.j > rc.e0 && (d == 0 || qval(d, p) >= nd.j)) {
                        closed_by_chain = true;
                        break;
                    }
                }
                if (closed_by_chain) continue;
                if (nd.j > depth) {
                    any_open = true;
                    continue;
                }
                // Delta(c + p^j X) = p^w G(X)
                BigInt pj = zpow(p, nd.j);
                RatPoly g = C.delta.shift(BigRat(nd.c)).scale_arg(BigRat(pj));
                long w = kValInf;
                for (auto& coef : g.coeffs()) {
                    if (coef == 0) continue;
                    long v = qval(coef, p);
                    w = std::min(w, v);
                }
                if (w >= kValInf) continue; // zero polynomial cannot happen (delta != 0)
                // residues of G mod p
                std::vector<BigInt> root_residues;
                std::vector<BigInt> unit_residues;
                {
                    // G = g / p^w; reduce coefficients mod p
                    auto Fp = FqCtx::prime_field(p.get_ui());
                    std::vector<FqElem> gc;
                    for (auto& coef : g.coeffs()) {
                        BigRat cc = coef / BigRat(zpow(p, w));
                        // cc is p-integral
                        BigInt num = zmod(cc.get_num(), p);
                        BigInt den = zmod(cc.get_den(), p);
                        uint64_t dv = Fp->fp().inv(den.get_ui());
                        gc.push_back(Fp->from_base(Fp->fp().mul(num.get_ui(), dv)));
                    }
                    FqPoly G(Fp, std::move(gc));
                    std::set<uint64_t> roots;
                    for (auto& [r, mult] : fq_roots(G)) roots.insert(r[0]);
                    for (uint64_t r = 0; r < p.get_ui(); ++r) {
                        if (roots.count(r)) root_residues.emplace_back(static_cast<unsigned long>(r));
                        else unit_residues.emplace_back(static_cast<unsigned long>(r));
                    }
                    if (G.deg() < 1 && !G.is_zero()) {
                        // constant nonzero G: all residues are units
                    }
                }
                // unit residues: members have v_p(Delta(t0)) = w exactly
                if (w % 12 != 0) {
                    // all of them are bad; nothing to do
                } else if (w == 0) {
                    // good fibers: pick the first nonsingular representative
                    for (auto& r : unit_residues) {
                        BigRat t0(nd.c + pj * r);
                        if (C.delta.eval(t0) == 0) continue;
                        if (tate_q(C.fiber(t0), p).good()) {
                            verdict.witness = t0;
                            verdict.witness_at_infinity_chart = (chart_id == 1);
                            verdict.witness_depth = nd.j + 1;
                            found_witness = true;
                            break;
                        }
                        // v_p = 0 must mean good; treat disagreement as fatal
                        throw std::logic_error("ubr: v_p(delta)=0 fiber not good");
                    }
                } else {
                    // w > 0 divisible by 12: decided per residue by Tate at a
                    // representative; deeper members may differ, so refine
                    for (auto& r : unit_residues) {
                        if (found_witness) break;
                        BigRat t0(nd.c + pj * r);
                        if (C.delta.eval(t0) != 0 && tate_q(C.fiber(t0), p).good()) {
                            verdict.witness = t0;
                            verdict.witness_at_infinity_chart = (chart_id == 1);
                            verdict.witness_depth = nd.j + 1;
                            found_witness = true;
                            break;
                        }
                        if (nd.j + 1 > depth) any_open = true;
                        else queue.push_back({nd.c + pj * r, nd.j + 1});
                    }
                }
                if (found_witness) break;
                // root residues: refine
                for (auto& r : root_residues) {
                    if (nd.j + 1 > depth) {
                        // maybe a closed chain swallows it; re-check at j+1
                        bool swallowed = false;
                        for (auto& rc : chains) {
                            if (!rc.closed || nd.j + 1 <= rc.e0) continue;
                            BigRat d = BigRat(nd.c + pj * r) - rc.rho;
                            if (d == 0 || qval(d, p) >= nd.j + 1) swallowed = true;
                        }
                        if (!swallowed) any_open = true;
                    } else {
                        queue.push_back({nd.c + pj * r, nd.j + 1});
                    }
                }
            }
        }
        if (found_witness) {
            verdict.kind = UbrVerdict::NOT_UBR;
        } else if (!any_open) {
            verdict.kind = UbrVerdict::UBR;
        } else {
            verdict.kind = UbrVerdict::UNKNOWN;
            verdict.note = "open residue classes at depth " + std::to_string(depth);
        }
        out.push_back(verdict);
    }
    return out;
}

} // namespace esd
