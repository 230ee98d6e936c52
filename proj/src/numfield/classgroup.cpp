#include "numfield/classgroup.hpp"
#include "numfield/hnf.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace esd {

namespace {

// Gram matrix (doubles, slightly inflated) of the T2 form on the rows of I
std::array<std::array<double, 3>, 3> t2_gram(const CubicField& K, const FracIdeal& I,
                                             double inflate) {
    auto b = ideal_basis(K, I);
    std::array<std::vector<double>, 3> emb;
    const double sqrt2 = std::sqrt(2.0);
    for (int i = 0; i < 3; ++i) {
        std::vector<double> v;
        if (K.r1 == 3) {
            for (auto& x : K.real_embeddings(b[i], 160)) v.push_back(x.mid());
        } else {
            v.push_back(K.real_embeddings(b[i], 160)[0].mid());
            RI re(0), im(0);
            K.complex_embedding(b[i], 160, re, im);
            v.push_back(sqrt2 * re.mid());
            v.push_back(sqrt2 * im.mid());
        }
        emb[i] = v;
    }
    std::array<std::array<double, 3>, 3> G{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += emb[i][k] * emb[j][k];
            G[i][j] = s * (i == j ? inflate : 1.0);
        }
    return G;
}

// enumerate integer vectors with quadratic form value <= B (Fincke-Pohst via
// Cholesky); calls visit(c); returns false on budget exhaustion
bool enumerate_below(const std::array<std::array<double, 3>, 3>& G, double B,
                     uint64_t budget, const std::function<bool(const std::array<long, 3>&)>& visit) {
    // Cholesky G = R^T R
    double r11 = std::sqrt(G[0][0]);
    double r12 = G[0][1] / r11, r13 = G[0][2] / r11;
    double r22s = G[1][1] - r12 * r12;
    if (r22s <= 0) return false;
    double r22 = std::sqrt(r22s);
    double r23 = (G[1][2] - r12 * r13) / r22;
    double r33s = G[2][2] - r13 * r13 - r23 * r23;
    if (r33s <= 0) return false;
    double r33 = std::sqrt(r33s);
    uint64_t count = 0;
    double lim3 = std::sqrt(B) / r33 * (1 + 1e-9) + 1e-9;
    for (long c3 = static_cast<long>(-lim3) - 1; c3 <= static_cast<long>(lim3) + 1; ++c3) {
        double q3 = r33 * c3;
        double rem2 = B - q3 * q3;
        if (rem2 < 0) continue;
        double ctr2 = -(r23 * c3) / r22;
        double rad2 = std::sqrt(rem2) / r22 + 1e-9;
        for (long c2 = static_cast<long>(std::floor(ctr2 - rad2)) - 1;
             c2 <= static_cast<long>(std::ceil(ctr2 + rad2)) + 1; ++c2) {
            double q2 = r22 * c2 + r23 * c3;
            double rem1 = rem2 - q2 * q2 + 1e-9 * B;
            if (rem1 < 0) continue;
            double ctr1 = -(r12 * c2 + r13 * c3) / r11;
            double rad1 = std::sqrt(std::max(rem1, 0.0)) / r11 + 1e-9;
            for (long c1 = static_cast<long>(std::floor(ctr1 - rad1)) - 1;
                 c1 <= static_cast<long>(std::ceil(ctr1 + rad1)) + 1; ++c1) {
                if (++count > budget) return false;
                if (c1 == 0 && c2 == 0 && c3 == 0) continue;
                if (!visit({c1, c2, c3})) return true; // early stop requested
            }
        }
    }
    return true;
}

} // namespace

Tri is_principal(const CubicField& K, const FracIdeal& Iin, const UnitBasis& U,
                 NFElem* generator, uint64_t enum_budget) {
    // normalize to an integral ideal with the same class
    FracIdeal I = Iin;
    if (I.den != 1) {
        FracIdeal J;
        J.den = 1;
        J.m = I.m; // I * den, same ideal class
        I = J;
    }
    BigRat nrm = ideal_norm(K, I);
    BigInt n = nrm.get_num();
    if (n == 0) throw std::domain_error("is_principal: zero ideal");
    // covering bound from the unit logs
    double rho = 0;
    for (auto& e : U.fund) {
        auto ab = K.abs_embeddings(e, 160);
        double mx = 0;
        for (size_t i = 0; i < ab.size(); ++i) {
            double v = std::fabs(ab[i].log().mid());
            mx = std::max(mx, v);
        }
        rho += mx / 2;
    }
    double logn = mpz_sizeinbase(n.get_mpz_t(), 2) * 0.6931472;
    double B = 3.0 * std::exp(2.0 * (logn / 3.0 + rho)) * 1.05 + 3.0;
    auto G = t2_gram(K, I, 1.0 + 1e-7);
    auto basis = ideal_basis(K, I);
    bool found = false;
    NFElem gen;
    bool complete = enumerate_below(G, B, enum_budget, [&](const std::array<long, 3>& c) {
        NFElem x = basis[0] * BigRat(c[0]) + basis[1] * BigRat(c[1]) + basis[2] * BigRat(c[2]);
        x = x.mod(K.f);
        if (x.is_zero()) return true;
        BigRat nx = K.norm(x);
        BigInt an = abs(nx.get_num());
        if (nx.get_den() == 1 && an == n) {
            found = true;
            gen = x;
            return false;
        }
        return true;
    });
    if (found) {
        if (generator) *generator = gen;
        return Tri::Yes;
    }
    if (!complete) return Tri::Unknown;
    return Tri::No;
}

ClassGroupResult class_group_oracle(const CubicField& K, uint64_t budget, uint64_t seed) {
    ClassGroupResult out;
    if (!K.maximal_everywhere) {
        out.reason = "field flagged: discriminant factorization incomplete";
        return out;
    }
    UnitBasis U;
    try {
        U = units_odd_index(K);
    } catch (const UnitSearchError& e) {
        out.reason = std::string("unit search failed: ") + e.what();
        return out;
    }
    // Minkowski bound (2/9)(4/pi)^{r2} sqrt|dK|, rounded up generously
    double mb = (2.0 / 9.0) * std::pow(4.0 / 3.14159265358979, K.r2) *
                std::sqrt(std::fabs(mpz_get_d(K.dK.get_mpz_t()))) + 1e-9;
    long MB = static_cast<long>(std::ceil(mb));
    // factor base
    struct FBPrime {
        PrimeIdeal P;
        BigInt norm;
    };
    std::vector<FBPrime> FB;
    for (uint64_t p : primes_up_to(static_cast<uint64_t>(std::max(MB, 2L)))) {
        auto pr = factor_prime(K, BigInt(static_cast<unsigned long>(p)));
        for (auto& P : pr) {
            BigInt nn = zpow(P.p, P.fdeg);
            if (nn <= MB) FB.push_back({P, nn});
        }
    }
    size_t k = FB.size();
    if (k == 0) {
        out.known = true;
        out.order = 1;
        out.two_rank = 0;
        return out;
    }
    // relation harvesting
    std::vector<std::vector<BigInt>> rel;
    auto add_relation = [&](const std::vector<BigInt>& v) {
        rel.push_back(v);
    };
    // relations from rational primes with all factors in FB
    {
        std::map<BigInt, bool> prime_done;
        for (auto& fb : FB) {
            if (prime_done.count(fb.P.p)) continue;
            prime_done[fb.P.p] = true;
            auto pr = factor_prime(K, fb.P.p);
            bool all_in = true;
            std::vector<BigInt> v(k, BigInt(0));
            for (auto& P : pr) {
                bool foundfb = false;
                for (size_t i = 0; i < k; ++i)
                    if (FB[i].P.I == P.I) {
                        v[i] = P.e;
                        foundfb = true;
                    }
                if (!foundfb) all_in = false;
            }
            if (all_in) add_relation(v);
        }
    }
    // random smooth elements
    Rng rng(seed ^ 0xc1a55ULL);
    auto try_element = [&](const NFElem& x) {
        if (x.is_zero()) return;
        BigRat nx = K.norm(x);
        BigInt nn = abs(nx.get_num());
        if (nx.get_den() != 1 || nn == 0) return;
        // smooth over FB rational primes?
        BigInt rest = nn;
        for (auto& fb : FB) {
            long v = zval(rest, fb.P.p);
            if (v > 0) rest = zdivexact(rest, zpow(fb.P.p, v));
        }
        if (rest != 1) return;
        std::vector<BigInt> v(k, BigInt(0));
        BigInt check = 1;
        for (size_t i = 0; i < k; ++i) {
            long val = elem_val(K, x, FB[i].P);
            v[i] = val;
            if (val > 0) check *= zpow(FB[i].norm, val);
        }
        // (x) must factor entirely over the factor base; otherwise the vector
        // is not a relation (x can have valuation at a large-norm prime above
        // a factor-base rational prime)
        if (check != nn) return;
        add_relation(v);
    };
    long radius = 3;
    for (int round = 0; round < 6; ++round, radius += 2) {
        for (long c0 = -radius; c0 <= radius; ++c0)
            for (long c1 = -radius; c1 <= radius; ++c1)
                for (long c2 = -radius; c2 <= radius; ++c2) {
                    if (c0 == 0 && c1 == 0 && c2 == 0) continue;
                    if (std::max({std::abs(c0), std::abs(c1), std::abs(c2)}) < radius - 1)
                        continue;
                    try_element(K.from_basis({BigRat(c0), BigRat(c1), BigRat(c2)}).mod(K.f));
                }
        if (rel.size() >= k + 4) break;
    }
    // certification loop
    for (int guard = 0; guard < 64; ++guard) {
        // SNF with column transform tracked
        // build matrix rows = relations
        size_t R = rel.size();
        std::vector<std::vector<BigInt>> M = rel;
        // track W = V^{-1} for the accumulated column operations; the quotient
        // generator for diagonal slot j is the class of row j of W
        std::vector<std::vector<BigInt>> V(k, std::vector<BigInt>(k, BigInt(0)));
        for (size_t i = 0; i < k; ++i) V[i][i] = 1;
        // diagonalize
        size_t t = 0;
        std::vector<BigInt> diag;
        {
            auto m = M;
            auto v = V;
            size_t rows = m.size();
            while (t < rows && t < k) {
                size_t pr = SIZE_MAX, pc = SIZE_MAX;
                BigInt best = 0;
                for (size_t i = t; i < rows; ++i)
                    for (size_t j = t; j < k; ++j)
                        if (m[i][j] != 0 && (best == 0 || abs(m[i][j]) < abs(best))) {
                            best = m[i][j];
                            pr = i;
                            pc = j;
                        }
                if (pr == SIZE_MAX) break;
                std::swap(m[t], m[pr]);
                for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pc]);
                std::swap(v[t], v[pc]); // W: swap rows
                bool clean = false;
                while (!clean) {
                    clean = true;
                    for (size_t i = t + 1; i < rows; ++i) {
                        if (m[i][t] == 0) continue;
                        BigInt q = zfdiv(m[i][t], m[t][t]);
                        for (size_t j = t; j < k; ++j) m[i][j] -= q * m[t][j];
                        if (m[i][t] != 0) {
                            std::swap(m[t], m[i]);
                            clean = false;
                        }
                    }
                    for (size_t j = t + 1; j < k; ++j) {
                        if (m[t][j] == 0) continue;
                        BigInt q = zfdiv(m[t][j], m[t][t]);
                        for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                        // column op col_j -= q col_t on M; W: row_t += q row_j
                        for (size_t i = 0; i < k; ++i) v[t][i] += q * v[j][i];
                        if (m[t][j] != 0) {
                            for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][j]);
                            std::swap(v[t], v[j]);
                            clean = false;
                        }
                    }
                }
                ++t;
            }
            if (t < k) {
                // relation lattice not full rank yet: hunt more relations by
                // testing FB products directly (certification below also adds)
                out.reason = "relation lattice not of full rank";
                // fall through to certification attempt with infinite diagonal? no:
                // handle by declaring unknown after retry rounds
            }
            diag.assign(k, BigInt(0));
            for (size_t i = 0; i < t; ++i) diag[i] = abs(m[i][i]);
            V = v;
        }
        if (t < k) {
            // find a missing relation: try to certify some power combination;
            // as a pragmatic fallback enlarge the element search radius
            bool found_more = false;
            for (long c0 = -radius - 2; c0 <= radius + 2 && !found_more; ++c0)
                for (long c1 = -radius - 2; c1 <= radius + 2 && !found_more; ++c1)
                    for (long c2 = -radius - 2; c2 <= radius + 2 && !found_more; ++c2) {
                        size_t before = rel.size();
                        try_element(K.from_basis({BigRat(c0), BigRat(c1), BigRat(c2)}).mod(K.f));
                        if (rel.size() > before) found_more = true;
                    }
            radius += 2;
            if (!found_more) {
                out.known = false;
                out.reason = "relation search exhausted before full rank";
                return out;
            }
            continue;
        }
        // candidate group: Z^k with diag invariants via V columns
        // certify: every prime-order element of the candidate group must be
        // non-principal
        BigInt order = 1;
        for (auto& d : diag) order *= d;
        bool refined = false;
        std::vector<BigInt> qprimes;
        {
            BigInt o = order;
            for (BigInt q = 2; q * q <= o; q += 1) {
                if (zmod(o, q) == 0) {
                    qprimes.push_back(q);
                    while (zmod(o, q) == 0) o /= q;
                }
            }
            if (o > 1) qprimes.push_back(o);
        }
        for (auto& q : qprimes) {
            // q-torsion subgroup generators: (diag[j]/q) * gen_j for q | diag[j]
            std::vector<size_t> idx;
            for (size_t j = 0; j < k; ++j)
                if (diag[j] != 0 && zmod(diag[j], q) == 0) idx.push_back(j);
            // enumerate nonzero c in F_q^{#idx}
            if (idx.empty()) continue;
            if (!q.fits_slong_p()) {
                out.reason = "candidate order has huge prime factor";
                return out;
            }
            long ql = q.get_si();
            std::vector<long> c(idx.size(), 0);
            auto next_vec = [&]() {
                for (size_t i = 0; i < c.size(); ++i) {
                    if (++c[i] < ql) return true;
                    c[i] = 0;
                }
                return false;
            };
            while (next_vec()) {
                // ideal = prod_j FB_j ^ (sum_i c_i * (diag/q) * V[j][idx_i])
                FracIdeal I = ideal_one(K);
                std::vector<BigInt> expo(k, BigInt(0));
                for (size_t i = 0; i < idx.size(); ++i) {
                    BigInt mult = zdivexact(diag[idx[i]], q) * c[i];
                    for (size_t j = 0; j < k; ++j) expo[j] += mult * V[idx[i]][j];
                }
                for (size_t j = 0; j < k; ++j) {
                    if (expo[j] == 0) continue;
                    if (!expo[j].fits_slong_p()) {
                        out.reason = "exponent overflow in certification";
                        return out;
                    }
                    I = ideal_mul(K, I, ideal_pow(K, FB[j].P.I, expo[j].get_si()));
                }
                NFElem g;
                Tri r = is_principal(K, I, U, &g, budget);
                if (r == Tri::Unknown) {
                    out.reason = "principal test budget exhausted";
                    return out;
                }
                if (r == Tri::Yes) {
                    // [I] = 0 with I = prod FB^expo (denominator clearing only
                    // changes the ideal by a principal rational multiple), so
                    // expo itself is the missing relation
                    rel.push_back(expo);
                    refined = true;
                    break;
                }
            }
            if (refined) break;
        }
        if (refined) continue;
        // certified
        out.known = true;
        out.order = order;
        for (auto& d : diag)
            if (d > 1) out.invariants.push_back(d);
        std::sort(out.invariants.begin(), out.invariants.end());
        out.two_rank = 0;
        for (auto& d : out.invariants)
            if (zmod(d, BigInt(2)) == 0) ++out.two_rank;
        return out;
    }
    out.reason = "certification loop did not converge";
    return out;
}

} // namespace esd
