#include "numfield/units.hpp"
#include "algebra/fqpoly.hpp"
#include "algebra/zfactor.hpp"
#include "ellsurf/residue.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace esd {

std::optional<NFElem> nf_sqrt(const CubicField& K, const NFElem& alpha_in) {
    NFElem a = alpha_in.mod(K.f);
    if (a.is_zero()) return NFElem();
    if (a.deg() <= 0) {
        BigRat c = a.coeff(0);
        BigInt n2, d2;
        if (c < 0) return std::nullopt;
        if (!zis_square(c.get_num(), &n2) || !zis_square(c.get_den(), &d2)) {
            // a rational can only be a square in K if it is a square in Q
            // (sqrt would generate a degree-2 subfield of a cubic field)
            return std::nullopt;
        }
        BigRat r(n2, d2);
        r.canonicalize();
        return NFElem(r);
    }
    RatPoly g = K.min_poly(a); // cubic
    if (g.deg() != 3) throw std::logic_error("nf_sqrt: unexpected minimal polynomial");
    // h(T) = g(T^2)
    std::vector<BigRat> hc(7);
    for (long i = 0; i <= 3; ++i) hc[2 * i] = g.coeff(i);
    RatPoly h(hc);
    auto fac = factor_q(h);
    if (!fac.complete) throw BudgetExceeded("nf_sqrt: factorization budget");
    NFResidue KK(K.f);
    for (auto& [piece, mult] : fac.factors) {
        if (piece.deg() != 3) continue;
        std::vector<NFElem> coeffs;
        for (long i = 0; i <= 3; ++i) coeffs.push_back(NFElem(piece.coeff(i)));
        for (auto& [root, m] : KK.roots(coeffs)) {
            NFElem beta = root;
            if (K.mul(beta, beta) == a || (K.mul(beta, beta) - a).is_zero()) return beta;
        }
    }
    return std::nullopt;
}

std::optional<SquareWitness> nonsquare_witness(const CubicField& K, const NFElem& alpha_in,
                                               int max_primes) {
    NFElem a = alpha_in.mod(K.f);
    if (a.is_zero()) return std::nullopt;
    // real-embedding witness first
    for (mpfr_prec_t prec = 96; prec <= 384; prec *= 2) {
        auto re = K.real_embeddings(a, prec);
        for (size_t i = 0; i < re.size(); ++i)
            if (re[i].is_negative()) {
                SquareWitness w;
                w.kind = SquareWitness::RealEmbedding;
                w.real_index = static_cast<int>(i);
                return w;
            }
        bool ambiguous = false;
        for (auto& v : re) ambiguous |= v.contains_zero();
        if (!ambiguous) break;
    }
    // residue witness: prime q where the image of alpha is a non-square
    BigInt skip = K.disc_f;
    skip *= K.norm(a).get_num();
    skip *= K.norm(a).get_den();
    auto primes = primes_up_to(static_cast<uint64_t>(std::max(max_primes, 100)));
    for (uint64_t q : primes) {
        if (q == 2) continue;
        BigInt Q(static_cast<unsigned long>(q));
        if (zmod(skip, Q) == 0) continue;
        auto Fq = FqCtx::prime_field(q);
        FqPoly fbar = FqPoly::from_ratpoly(Fq, K.f);
        auto fac = factor_fq(fbar);
        // use the first factor
        const FqPoly& hbar = fac.factors[0].first;
        auto R = hbar.deg() == 1 ? FqCtx::prime_field(q)
                                 : FqCtx::extension(q, [&] {
                                       std::vector<uint64_t> m;
                                       for (long i = 0; i <= hbar.deg(); ++i)
                                           m.push_back(hbar.coeff(i)[0]);
                                       return m;
                                   }());
        // image of alpha: evaluate the polynomial at the class of x
        FqElem img = R->zero();
        FqElem xbar = hbar.deg() == 1 ? R->from_base(Fq->fp().neg(hbar.coeff(0)[0])) : R->gen();
        for (long i = a.deg(); i >= 0; --i) {
            img = R->mul(img, xbar);
            BigRat c = a.coeff(i);
            uint64_t num = R->fp().reduce_int(c.get_num());
            uint64_t den = R->fp().reduce_int(c.get_den());
            img = R->add(img, R->from_base(R->fp().mul(num, R->fp().inv(den))));
        }
        if (R->is_zero(img)) continue;
        if (!R->is_square(img)) {
            SquareWitness w;
            w.kind = SquareWitness::ResiduePrime;
            w.q = Q;
            for (long i = 0; i <= hbar.deg(); ++i)
                w.qfactor.emplace_back(static_cast<unsigned long>(hbar.coeff(i)[0]));
            return w;
        }
    }
    return std::nullopt;
}

bool verify_nonsquare_witness(const CubicField& K, const NFElem& alpha_in,
                              const SquareWitness& w) {
    NFElem a = alpha_in.mod(K.f);
    if (w.kind == SquareWitness::RealEmbedding) {
        for (mpfr_prec_t prec = 96; prec <= 1536; prec *= 2) {
            auto re = K.real_embeddings(a, prec);
            if (w.real_index >= static_cast<int>(re.size())) return false;
            if (re[w.real_index].is_negative()) return true;
            if (re[w.real_index].is_positive()) return false;
        }
        return false;
    }
    // residue witness
    uint64_t q = w.q.get_ui();
    auto Fq = FqCtx::prime_field(q);
    std::vector<uint64_t> m;
    for (auto& c : w.qfactor) m.push_back(zmod(c, w.q).get_ui());
    // the factor must divide f mod q
    FqPoly fbar = FqPoly::from_ratpoly(Fq, K.f);
    FqPoly hbar = FqPoly::from_base_coeffs(Fq, m);
    if (!fbar.mod(hbar).is_zero()) return false;
    auto R = hbar.deg() == 1 ? Fq
                             : FqCtx::extension(q, m);
    FqElem img = R->zero();
    FqElem xbar = hbar.deg() == 1 ? R->from_base(Fq->fp().neg(hbar.coeff(0)[0])) : R->gen();
    for (long i = a.deg(); i >= 0; --i) {
        img = R->mul(img, xbar);
        BigRat c = a.coeff(i);
        if (zmod(c.get_den(), w.q) == 0) return false;
        uint64_t num = R->fp().reduce_int(c.get_num());
        uint64_t den = R->fp().reduce_int(c.get_den());
        img = R->add(img, R->from_base(R->fp().mul(num, R->fp().inv(den))));
    }
    if (R->is_zero(img)) return false;
    return !R->is_square(img);
}

namespace {

// log |sigma_i| vector of a unit, midpoints (used only for steering; every
// group-theoretic conclusion is verified exactly)
std::vector<double> log_embedding(const CubicField& K, const NFElem& u, mpfr_prec_t prec) {
    auto ab = K.abs_embeddings(u, prec);
    std::vector<double> out;
    for (auto& v : ab) out.push_back(std::log(std::max(v.mid(), 1e-300)));
    return out;
}

bool is_pm_one(const NFElem& u) {
    return u.deg() <= 0 && (u.coeff(0) == 1 || u.coeff(0) == -1);
}

} // namespace

UnitBasis units_odd_index(const CubicField& K, const std::vector<NFElem>& hints,
                          long coord_bound) {
    long rank = K.r1 + K.r2 - 1;
    std::vector<NFElem> found;
    auto consider = [&](const NFElem& u) {
        NFElem v = u.mod(K.f);
        if (is_pm_one(v) || v.is_zero()) return;
        if (!K.is_integral(v)) return;
        BigRat n = K.norm(v);
        if (n != 1 && n != -1) return;
        found.push_back(v);
    };
    for (auto& h : hints) consider(h);
    // bounded coordinate search over the integral basis
    for (long b = 1; b <= coord_bound; b *= 2) {
        for (long c0 = -b; c0 <= b; ++c0)
            for (long c1 = -b; c1 <= b; ++c1)
                for (long c2 = -b; c2 <= b; ++c2) {
                    if (std::max({std::abs(c0), std::abs(c1), std::abs(c2)}) * 2 <= b && b > 1)
                        continue; // visited in earlier round
                    NFElem u = K.from_basis({BigRat(c0), BigRat(c1), BigRat(c2)});
                    consider(u);
                }
        // try building a full-rank basis from the units found so far
        std::vector<NFElem> basis;
        mpfr_prec_t prec = 192;
        auto reduce_against = [&](NFElem v) -> NFElem {
            // reduce v by integer combinations of basis (steered numerically,
            // verified exactly by recomputation)
            for (int round = 0; round < 64; ++round) {
                if (is_pm_one(v)) return v;
                if (basis.empty()) return v;
                auto lv = log_embedding(K, v, prec);
                // solve for nearest integer combination in the log lattice
                std::vector<long> k(basis.size(), 0);
                if (basis.size() == 1) {
                    auto l0 = log_embedding(K, basis[0], prec);
                    double num = 0, den = 0;
                    for (size_t i = 0; i < lv.size(); ++i) {
                        num += lv[i] * l0[i];
                        den += l0[i] * l0[i];
                    }
                    k[0] = std::lround(num / std::max(den, 1e-30));
                } else {
                    auto l0 = log_embedding(K, basis[0], prec);
                    auto l1 = log_embedding(K, basis[1], prec);
                    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
                    for (size_t i = 0; i < lv.size(); ++i) {
                        a11 += l0[i] * l0[i];
                        a12 += l0[i] * l1[i];
                        a22 += l1[i] * l1[i];
                        b1 += lv[i] * l0[i];
                        b2 += lv[i] * l1[i];
                    }
                    double det = a11 * a22 - a12 * a12;
                    if (std::fabs(det) < 1e-24) return v;
                    k[0] = std::lround((b1 * a22 - b2 * a12) / det);
                    k[1] = std::lround((a11 * b2 - a12 * b1) / det);
                }
                bool all0 = true;
                for (auto kk : k) all0 &= kk == 0;
                if (all0) return v;
                NFElem w = v;
                for (size_t i = 0; i < basis.size(); ++i) {
                    if (k[i] == 0) continue;
                    NFElem bi = basis[i];
                    NFElem acc(BigRat(1));
                    NFElem pw2 = k[i] > 0 ? K.inv(bi) : bi;
                    long e = std::labs(k[i]);
                    while (e) {
                        if (e & 1) acc = K.mul(acc, pw2);
                        pw2 = K.mul(pw2, pw2);
                        e >>= 1;
                    }
                    w = K.mul(w, acc);
                }
                // exact progress check via coefficient size
                v = w;
            }
            return v;
        };
        for (auto& u : found) {
            NFElem v = reduce_against(u);
            if (is_pm_one(v)) continue;
            if (static_cast<long>(basis.size()) < rank) basis.push_back(v);
        }
        if (static_cast<long>(basis.size()) == rank) {
            // verify independence exactly via log-interval determinant sign
            bool indep = true;
            if (rank == 2) {
                auto A0 = K.abs_embeddings(basis[0], 256);
                auto A1 = K.abs_embeddings(basis[1], 256);
                RI d = A0[0].log() * A1[1].log() - A0[1].log() * A1[0].log();
                indep = !d.contains_zero();
            } else {
                auto A0 = K.abs_embeddings(basis[0], 256);
                indep = !(A0[0].log().contains_zero());
            }
            if (!indep) continue;
            // 2-saturation by square-root descent
            UnitBasis U;
            U.fund = basis;
            for (int guard = 0; guard < 256; ++guard) {
                bool changed = false;
                // all nonempty subsets times +-1
                long r = static_cast<long>(U.fund.size());
                for (long mask = 1; mask < (1 << r) && !changed; ++mask)
                    for (int sgn = 0; sgn < 2 && !changed; ++sgn) {
                        NFElem prod(BigRat(sgn ? -1 : 1));
                        for (long i = 0; i < r; ++i)
                            if (mask & (1 << i)) prod = K.mul(prod, U.fund[i]);
                        auto sq = nf_sqrt(K, prod);
                        if (sq) {
                            // replace one participating unit by the root
                            for (long i = 0; i < r; ++i)
                                if (mask & (1 << i)) {
                                    U.fund[i] = *sq;
                                    break;
                                }
                            changed = true;
                        }
                    }
                if (!changed) {
                    U.odd_index_certified = true;
                    return U;
                }
            }
            throw std::runtime_error("units_odd_index: saturation did not terminate");
        }
    }
    throw UnitSearchError(coord_bound);
}

std::vector<NFElem> unit_square_classes(const CubicField& K, const UnitBasis& U) {
    std::vector<NFElem> out = {NFElem(BigRat(1))};
    for (auto& e : U.fund) {
        std::vector<NFElem> next;
        for (auto& x : out) {
            next.push_back(x);
            next.push_back(K.mul(x, e));
        }
        out = next;
    }
    std::vector<NFElem> with_sign;
    for (auto& x : out) {
        with_sign.push_back(x);
        with_sign.push_back(-x);
    }
    return with_sign;
}

} // namespace esd
