#include "numfield/ideal.hpp"
#include "algebra/fqpoly.hpp"
#include "numfield/hnf.hpp"

#include <algorithm>
#include <stdexcept>

namespace esd {

namespace {

// HNF lattice (rows over the integral basis) from rational coordinate rows
FracIdeal from_basis_rows(std::vector<std::array<BigRat, 3>> rows) {
    BigInt den = 1;
    for (auto& r : rows)
        for (auto& c : r) den = zlcm(den, c.get_den());
    std::vector<std::array<BigInt, 3>> zr;
    for (auto& r : rows) {
        std::array<BigInt, 3> z;
        for (int i = 0; i < 3; ++i) { BigRat v = r[i] * BigRat(den); z[i] = v.get_num(); }
        zr.push_back(z);
    }
    FracIdeal I;
    I.m = hnf3(std::move(zr));
    I.den = den;
    BigInt g = I.den;
    for (auto& r : I.m)
        for (auto& c : r) g = zgcd(g, c);
    if (g > 1) {
        I.den = zdivexact(I.den, g);
        for (auto& r : I.m)
            for (auto& c : r) c = zdivexact(c, g);
    }
    return I;
}

std::array<BigRat, 3> row_coords(const FracIdeal& I, int i) {
    std::array<BigRat, 3> c;
    for (int j = 0; j < 3; ++j) {
        c[j] = BigRat(I.m[i][j], I.den);
        c[j].canonicalize();
    }
    return c;
}

} // namespace

FracIdeal ideal_one(const CubicField& K) {
    (void)K;
    FracIdeal I;
    I.den = 1;
    I.m = {{{BigInt(1), BigInt(0), BigInt(0)},
            {BigInt(0), BigInt(1), BigInt(0)},
            {BigInt(0), BigInt(0), BigInt(1)}}};
    return I;
}

std::array<NFElem, 3> ideal_basis(const CubicField& K, const FracIdeal& I) {
    std::array<NFElem, 3> out;
    for (int i = 0; i < 3; ++i) {
        auto c = row_coords(I, i);
        out[i] = K.from_basis(c);
    }
    return out;
}

FracIdeal ideal_from_elements(const CubicField& K, const std::vector<NFElem>& gens) {
    std::vector<std::array<BigRat, 3>> rows;
    for (auto& g : gens)
        for (int j = 0; j < 3; ++j)
            rows.push_back(K.to_basis(K.mul(g, K.w(j))));
    return from_basis_rows(std::move(rows));
}

FracIdeal ideal_principal(const CubicField& K, const NFElem& a) {
    return ideal_from_elements(K, {a});
}

FracIdeal ideal_mul(const CubicField& K, const FracIdeal& I, const FracIdeal& J) {
    auto bi = ideal_basis(K, I);
    auto bj = ideal_basis(K, J);
    std::vector<std::array<BigRat, 3>> rows;
    for (auto& x : bi)
        for (auto& y : bj) rows.push_back(K.to_basis(K.mul(x, y)));
    return from_basis_rows(std::move(rows));
}

BigRat ideal_norm(const CubicField& K, const FracIdeal& I) {
    (void)K;
    BigInt d = det3(I.m);
    BigRat n(abs(d), I.den * I.den * I.den);
    n.canonicalize();
    return n;
}

bool ideal_is_integral(const FracIdeal& I) { return I.den == 1; }

bool ideal_contains(const CubicField& K, const FracIdeal& I, const NFElem& a) {
    auto c = K.to_basis(a);
    for (auto& x : c) x *= BigRat(I.den);
    std::array<BigRat, 3> sol;
    for (int i = 2; i >= 0; --i) {
        BigRat acc = c[i];
        for (int j = i + 1; j < 3; ++j) acc -= sol[j] * BigRat(I.m[j][i]);
        sol[i] = acc / BigRat(I.m[i][i]);
    }
    for (auto& s : sol)
        if (s.get_den() != 1) return false;
    return true;
}

bool ideal_subset(const CubicField& K, const FracIdeal& I, const FracIdeal& J) {
    auto bi = ideal_basis(K, I);
    for (auto& x : bi)
        if (!ideal_contains(K, J, x)) return false;
    return true;
}

FracIdeal ideal_inv(const CubicField& K, const FracIdeal& I) {
    // x with x * I subset O: conditions on basis coordinates; the solution
    // lattice comes from the HNF of the stacked condition matrix.
    auto bi = ideal_basis(K, I);
    std::vector<std::array<BigRat, 3>> cond; // rows of C: C * x in Z^9
    for (auto& g : bi) {
        // coords(x * g) = sum_j x_j coords(w_j g): rows indexed by output coord
        std::array<std::array<BigRat, 3>, 3> M;
        for (int j = 0; j < 3; ++j) {
            auto c = K.to_basis(K.mul(K.w(j), g));
            for (int k = 0; k < 3; ++k) M[k][j] = c[k];
        }
        for (int k = 0; k < 3; ++k) cond.push_back(M[k]);
    }
    BigInt d = 1;
    for (auto& r : cond)
        for (auto& c : r) d = zlcm(d, c.get_den());
    std::vector<std::array<BigInt, 3>> B;
    for (auto& r : cond) {
        std::array<BigInt, 3> z;
        for (int i = 0; i < 3; ++i) { BigRat v = r[i] * BigRat(d); z[i] = v.get_num(); }
        B.push_back(z);
    }
    auto H = hnf3(std::move(B)); // row lattice of conditions
    // condition: H x in d Z^3  =>  x in d * H^{-1} Z^3
    // H lower triangular: invert exactly over Q
    std::array<std::array<BigRat, 3>, 3> Hinv;
    // solve H * X_col = e_k
    for (int k = 0; k < 3; ++k) {
        std::array<BigRat, 3> x;
        for (int i = 0; i < 3; ++i) {
            BigRat acc = (i == k) ? BigRat(1) : BigRat(0);
            for (int j = 0; j < i; ++j) acc -= BigRat(H[i][j]) * x[j];
            x[i] = acc / BigRat(H[i][i]);
        }
        for (int i = 0; i < 3; ++i) Hinv[i][k] = x[i];
    }
    std::vector<std::array<BigRat, 3>> rows;
    for (int k = 0; k < 3; ++k) {
        std::array<BigRat, 3> r;
        for (int i = 0; i < 3; ++i) r[i] = Hinv[i][k] * BigRat(d);
        rows.push_back(r);
    }
    return from_basis_rows(std::move(rows));
}

FracIdeal ideal_pow(const CubicField& K, FracIdeal I, long e) {
    if (e < 0) {
        I = ideal_inv(K, I);
        e = -e;
    }
    FracIdeal acc = ideal_one(K);
    while (e) {
        if (e & 1) acc = ideal_mul(K, acc, I);
        e >>= 1;
        if (e) I = ideal_mul(K, I, I);
    }
    return acc;
}

namespace {

bool prime_maximal_at(const CubicField& K, const BigInt& p) {
    if (K.maximal_everywhere) return true;
    for (auto& q : K.maximal_at)
        if (q == p) return true;
    // p-maximality also holds whenever p^2 does not divide disc(f)
    return zval(K.disc_f, p) < 2;
}

} // namespace

std::vector<PrimeIdeal> factor_prime(const CubicField& K, const BigInt& p) {
    if (!prime_maximal_at(K, p))
        throw std::domain_error("factor_prime: order not certified maximal at p");
    std::vector<PrimeIdeal> out;
    bool index_prime = zmod(K.index, p) == 0;
    if (!index_prime) {
        // Dedekind-Kummer on f mod p
        auto Fp = FqCtx::prime_field(p.get_ui());
        FqPoly fbar = FqPoly::from_ratpoly(Fp, K.f);
        auto fac = factor_fq(fbar);
        for (auto& [g, e] : fac.factors) {
            // lift g to an integer polynomial
            std::vector<BigRat> c;
            for (long i = 0; i <= g.deg(); ++i)
                c.emplace_back(BigInt(static_cast<unsigned long>(g.coeff(i)[0])));
            NFElem gl = RatPoly(std::move(c));
            PrimeIdeal P;
            P.p = p;
            P.e = e;
            P.fdeg = g.deg();
            P.second_gen = gl;
            P.I = ideal_from_elements(K, {K.of_rat(BigRat(p)), gl});
            out.push_back(std::move(P));
        }
        return out;
    }
    // index prime: split the etale algebra (O/pO)/rad into fields and pull
    // the maximal ideals back
    auto Fp = FqCtx::prime_field(p.get_ui());
    const auto& fp = Fp->fp();
    std::array<NFElem, 3> w = {K.w(0), K.w(1), K.w(2)};
    auto coords_mod_p = [&](const NFElem& a) {
        auto c = K.to_basis(a);
        std::array<uint64_t, 3> out{};
        for (int i = 0; i < 3; ++i) {
            if (c[i].get_den() != 1) throw std::logic_error("factor_prime: coords");
            out[i] = fp.reduce_int(c[i].get_num());
        }
        return out;
    };
    // radical = kernel of the Frobenius power x -> x^(p^e), p^e >= 3
    std::vector<std::array<uint64_t, 3>> rad;
    {
        long e_frob = (p == 2) ? 2 : 1;
        std::array<std::array<uint64_t, 3>, 3> Frob{};
        for (int i = 0; i < 3; ++i) {
            NFElem r2(BigRat(1));
            NFElem b2 = w[i];
            BigInt e2 = zpow(p, e_frob);
            while (e2 > 0) {
                if (zmod(e2, BigInt(2)) == 1) r2 = K.mul(r2, b2);
                b2 = K.mul(b2, b2);
                e2 = zfdiv(e2, BigInt(2));
            }
            auto c = coords_mod_p(r2);
            for (int k = 0; k < 3; ++k) Frob[k][i] = c[k];
        }
        // kernel of Frob
        auto A = Frob;
        std::array<int, 3> pc{-1, -1, -1};
        int rank = 0;
        for (int c = 0; c < 3 && rank < 3; ++c) {
            int pr = -1;
            for (int r = rank; r < 3; ++r)
                if (A[r][c] != 0) { pr = r; break; }
            if (pr < 0) continue;
            std::swap(A[rank], A[pr]);
            uint64_t inv = fp.inv(A[rank][c]);
            for (int j = 0; j < 3; ++j) A[rank][j] = fp.mul(A[rank][j], inv);
            for (int r = 0; r < 3; ++r) {
                if (r == rank || A[r][c] == 0) continue;
                uint64_t v = A[r][c];
                for (int j = 0; j < 3; ++j) A[r][j] = fp.sub(A[r][j], fp.mul(v, A[rank][j]));
            }
            pc[rank] = c;
            ++rank;
        }
        std::array<bool, 3> isp{false, false, false};
        for (int r = 0; r < rank; ++r) isp[pc[r]] = true;
        for (int c = 0; c < 3; ++c) {
            if (isp[c]) continue;
            std::array<uint64_t, 3> v{0, 0, 0};
            v[c] = 1;
            for (int r = 0; r < rank; ++r) v[pc[r]] = fp.neg(A[r][c]);
            rad.push_back(v);
        }
    }
    // quotient coordinates: echelonize rad, complement coordinates define the
    // projection A -> Abar = A/rad
    long m_dim = 3 - static_cast<long>(rad.size());
    std::vector<std::array<uint64_t, 3>> rad_ech = rad;
    std::vector<int> rad_piv;
    {
        size_t rank = 0;
        for (int c = 0; c < 3 && rank < rad_ech.size(); ++c) {
            size_t pr = SIZE_MAX;
            for (size_t r = rank; r < rad_ech.size(); ++r)
                if (rad_ech[r][c] != 0) { pr = r; break; }
            if (pr == SIZE_MAX) continue;
            std::swap(rad_ech[rank], rad_ech[pr]);
            uint64_t inv = fp.inv(rad_ech[rank][c]);
            for (int j = 0; j < 3; ++j) rad_ech[rank][j] = fp.mul(rad_ech[rank][j], inv);
            for (size_t r = 0; r < rad_ech.size(); ++r) {
                if (r == rank || rad_ech[r][c] == 0) continue;
                uint64_t v = rad_ech[r][c];
                for (int j = 0; j < 3; ++j)
                    rad_ech[r][j] = fp.sub(rad_ech[r][j], fp.mul(v, rad_ech[rank][j]));
            }
            rad_piv.push_back(c);
            ++rank;
        }
    }
    std::vector<int> comp_coord; // coordinates forming a complement of rad
    for (int c = 0; c < 3; ++c)
        if (std::find(rad_piv.begin(), rad_piv.end(), c) == rad_piv.end())
            comp_coord.push_back(c);
    auto project = [&](std::array<uint64_t, 3> v) {
        // reduce by rad_ech, read complement coordinates
        for (size_t r = 0; r < rad_ech.size(); ++r) {
            int c = rad_piv[r];
            if (v[c] != 0) {
                uint64_t q = v[c];
                for (int j = 0; j < 3; ++j) v[j] = fp.sub(v[j], fp.mul(q, rad_ech[r][j]));
            }
        }
        std::vector<uint64_t> out;
        for (int c : comp_coord) out.push_back(v[c]);
        return out;
    };
    auto unproject = [&](const std::vector<uint64_t>& v) {
        std::array<uint64_t, 3> out{0, 0, 0};
        for (size_t i = 0; i < comp_coord.size(); ++i) out[comp_coord[i]] = v[i];
        return out;
    };
    auto elem_of = [&](const std::array<uint64_t, 3>& v) {
        NFElem x(BigRat(0));
        for (int i = 0; i < 3; ++i)
            x = x + w[i] * BigRat(BigInt(static_cast<unsigned long>(v[i])));
        return x;
    };
    // multiplication in Abar
    auto bar_mul = [&](const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
        NFElem x = elem_of(unproject(a)), y = elem_of(unproject(b));
        return project(coords_mod_p(K.mul(x, y)));
    };
    std::vector<uint64_t> bar_one = project(coords_mod_p(NFElem(BigRat(1))));
    // recursive splitting of the etale algebra into field blocks, each given by
    // its idempotent (coordinates in Abar)
    struct Block {
        std::vector<uint64_t> idem;           // identity of the block
        std::vector<std::vector<uint64_t>> basis; // basis of idem * Abar
    };
    auto block_of_idem = [&](const std::vector<uint64_t>& E) {
        Block b;
        b.idem = E;
        // span of E * ej over all quotient basis vectors
        std::vector<std::vector<uint64_t>> gens;
        for (long j = 0; j < m_dim; ++j) {
            std::vector<uint64_t> ej(m_dim, 0);
            ej[j] = 1;
            gens.push_back(bar_mul(E, ej));
        }
        // echelonize
        size_t rank = 0;
        for (long c = 0; c < m_dim && rank < gens.size(); ++c) {
            size_t pr = SIZE_MAX;
            for (size_t r = rank; r < gens.size(); ++r)
                if (gens[r][c] != 0) { pr = r; break; }
            if (pr == SIZE_MAX) continue;
            std::swap(gens[rank], gens[pr]);
            uint64_t inv = fp.inv(gens[rank][c]);
            for (long j = 0; j < m_dim; ++j) gens[rank][j] = fp.mul(gens[rank][j], inv);
            for (size_t r = 0; r < gens.size(); ++r) {
                if (r == rank || gens[r][c] == 0) continue;
                uint64_t v = gens[r][c];
                for (long j = 0; j < m_dim; ++j)
                    gens[r][j] = fp.sub(gens[r][j], fp.mul(v, gens[rank][j]));
            }
            ++rank;
        }
        gens.resize(rank);
        b.basis = gens;
        return b;
    };
    std::vector<Block> fields;
    std::vector<Block> todo = {block_of_idem(bar_one)};
    Rng rng(0x1dea1ULL ^ p.get_ui());
    int guard = 0;
    while (!todo.empty()) {
        if (++guard > 512) throw std::runtime_error("factor_prime: splitting failed");
        Block blk = todo.back();
        todo.pop_back();
        long dim = static_cast<long>(blk.basis.size());
        if (dim == 1) {
            fields.push_back(blk);
            continue;
        }
        // find an element of the block whose minimal polynomial (over F_p, with
        // identity blk.idem) either proves the block is a field or splits it
        bool resolved = false;
        for (int attempt = 0; attempt < 96 && !resolved; ++attempt) {
            std::vector<uint64_t> x(m_dim, 0);
            if (attempt < dim) x = blk.basis[attempt];
            else {
                std::vector<uint64_t> acc(m_dim, 0);
                for (auto& bvec : blk.basis) {
                    uint64_t c = rng.below(p.get_ui());
                    for (long j = 0; j < m_dim; ++j)
                        acc[j] = fp.add(acc[j], fp.mul(c, bvec[j]));
                }
                x = acc;
            }
            // powers idem, x, x^2, ..., x^dim
            std::vector<std::vector<uint64_t>> pw = {blk.idem};
            for (long k = 1; k <= dim; ++k) pw.push_back(bar_mul(pw.back(), x));
            // find minimal d with pw[d] dependent on pw[0..d-1]
            std::vector<uint64_t> mp;
            for (long d = 1; d <= dim; ++d) {
                // solve sum_{k<d} c_k pw[k] = -pw[d] (m_dim equations)
                std::vector<std::vector<uint64_t>> A(m_dim, std::vector<uint64_t>(d + 1, 0));
                for (long r = 0; r < m_dim; ++r) {
                    for (long k = 0; k < d; ++k) A[r][k] = pw[k][r];
                    A[r][d] = fp.neg(pw[d][r]);
                }
                size_t rank = 0;
                std::vector<int> pivc;
                for (long c = 0; c < d && static_cast<long>(rank) < m_dim; ++c) {
                    size_t pr = SIZE_MAX;
                    for (size_t r = rank; r < A.size(); ++r)
                        if (A[r][c] != 0) { pr = r; break; }
                    if (pr == SIZE_MAX) continue;
                    std::swap(A[rank], A[pr]);
                    uint64_t inv = fp.inv(A[rank][c]);
                    for (long j = 0; j <= d; ++j) A[rank][j] = fp.mul(A[rank][j], inv);
                    for (size_t r = 0; r < A.size(); ++r) {
                        if (r == rank || A[r][c] == 0) continue;
                        uint64_t v = A[r][c];
                        for (long j = 0; j <= d; ++j)
                            A[r][j] = fp.sub(A[r][j], fp.mul(v, A[rank][j]));
                    }
                    pivc.push_back(static_cast<int>(c));
                    ++rank;
                }
                bool ok = true;
                for (size_t r = rank; r < A.size(); ++r)
                    if (A[r][d] != 0) ok = false;
                if (!ok) continue;
                mp.assign(d + 1, 0);
                mp[d] = 1;
                for (size_t r = 0; r < rank; ++r) mp[pivc[r]] = A[r][d];
                break;
            }
            if (mp.empty()) continue;
            long d = static_cast<long>(mp.size()) - 1;
            if (d == dim) {
                FqPoly mpoly = FqPoly::from_base_coeffs(Fp, mp);
                if (fq_is_irreducible(mpoly)) {
                    fields.push_back(blk);
                    resolved = true;
                    break;
                }
            }
            FqPoly mpoly = FqPoly::from_base_coeffs(Fp, mp);
            auto mfac = factor_fq(mpoly);
            if (mfac.factors.size() < 2) continue; // irreducible but d < dim: try again
            // split via CRT idempotents: E_i = g_i(x) u_i(x), g_i = mp/h_i
            for (auto& [h, mult] : mfac.factors) {
                FqPoly him = FqPoly::constant(Fp, Fp->one());
                for (int t2 = 0; t2 < mult; ++t2) him = him * h;
                FqPoly gi = mpoly.divexact(him);
                FqPoly r0 = gi.mod(him), r1 = him;
                FqPoly u0 = FqPoly::constant(Fp, Fp->one()), u1(Fp);
                while (!r1.is_zero()) {
                    FqPoly q, r;
                    FqPoly::divmod(r0, r1, q, r);
                    r0 = r1; r1 = r;
                    FqPoly u2 = u0 - q * u1;
                    u0 = u1; u1 = u2;
                }
                if (r0.deg() != 0) throw std::logic_error("factor_prime: crt");
                FqPoly ui = u0.mul_elem(Fp->inv(r0.coeff(0))).mod(him);
                FqPoly Eply = gi * ui;
                // evaluate at x within the block (constant term uses idem)
                std::vector<uint64_t> E(m_dim, 0);
                std::vector<uint64_t> pwk = blk.idem;
                for (long k = 0; k <= Eply.deg(); ++k) {
                    uint64_t c = Eply.coeff(k)[0];
                    for (long j = 0; j < m_dim; ++j) E[j] = fp.add(E[j], fp.mul(c, pwk[j]));
                    pwk = bar_mul(pwk, x);
                }
                todo.push_back(block_of_idem(E));
            }
            resolved = true;
        }
        if (!resolved) throw std::runtime_error("factor_prime: splitting failed");
    }
    // maximal ideals: M_i = preimage of { a in Abar : a * E_i = 0 } plus rad
    for (auto& blk : fields) {
        // kernel of multiplication by idem on Abar
        std::vector<std::vector<uint64_t>> A(m_dim, std::vector<uint64_t>(m_dim, 0));
        for (long j = 0; j < m_dim; ++j) {
            std::vector<uint64_t> ej(m_dim, 0);
            ej[j] = 1;
            auto col = bar_mul(blk.idem, ej);
            for (long k = 0; k < m_dim; ++k) A[k][j] = col[k];
        }
        // kernel
        std::vector<std::vector<uint64_t>> ker;
        {
            std::vector<int> pivc;
            size_t rank = 0;
            for (long c = 0; c < m_dim && static_cast<long>(rank) < m_dim; ++c) {
                size_t pr = SIZE_MAX;
                for (size_t r = rank; r < A.size(); ++r)
                    if (A[r][c] != 0) { pr = r; break; }
                if (pr == SIZE_MAX) continue;
                std::swap(A[rank], A[pr]);
                uint64_t inv = fp.inv(A[rank][c]);
                for (long j = 0; j < m_dim; ++j) A[rank][j] = fp.mul(A[rank][j], inv);
                for (size_t r = 0; r < A.size(); ++r) {
                    if (r == rank || A[r][c] == 0) continue;
                    uint64_t v = A[r][c];
                    for (long j = 0; j < m_dim; ++j)
                        A[r][j] = fp.sub(A[r][j], fp.mul(v, A[rank][j]));
                }
                pivc.push_back(static_cast<int>(c));
                ++rank;
            }
            std::vector<bool> isp(m_dim, false);
            for (size_t r = 0; r < rank; ++r) isp[pivc[r]] = true;
            for (long c = 0; c < m_dim; ++c) {
                if (isp[c]) continue;
                std::vector<uint64_t> v(m_dim, 0);
                v[c] = 1;
                for (size_t r = 0; r < rank; ++r) v[pivc[r]] = fp.neg(A[r][c]);
                ker.push_back(v);
            }
        }
        PrimeIdeal P;
        P.p = p;
        P.fdeg = static_cast<long>(blk.basis.size());
        std::vector<NFElem> gens = {K.of_rat(BigRat(p))};
        for (auto& v : rad) gens.push_back(elem_of(v));
        for (auto& v : ker) gens.push_back(elem_of(unproject(v)));
        P.I = ideal_from_elements(K, gens);
        BigRat n = ideal_norm(K, P.I);
        if (n != BigRat(zpow(p, P.fdeg))) throw std::logic_error("factor_prime: norm mismatch");
        out.push_back(std::move(P));
    }
    // ramification indices from v_P((p)); also find second generators
    FracIdeal pO = ideal_principal(K, K.of_rat(BigRat(p)));
    long esum = 0;
    for (auto& P : out) {
        P.e = ideal_val(K, pO, P);
        esum += P.e * P.fdeg;
    }
    if (esum != 3) throw std::logic_error("factor_prime: sum ef != 3");
    // second generators for index primes: search small elements of P
    for (auto& P : out) {
        if (!P.second_gen.is_zero()) continue;
        auto b = ideal_basis(K, P.I);
        bool found = false;
        for (long c0 = 0; c0 < 3 && !found; ++c0)
            for (long c1 = 0; c1 < 3 && !found; ++c1)
                for (long c2 = 0; c2 < 3 && !found; ++c2) {
                    if (c0 + c1 + c2 == 0) continue;
                    NFElem g = b[0] * BigRat(c0) + b[1] * BigRat(c1) + b[2] * BigRat(c2);
                    FracIdeal J = ideal_from_elements(K, {K.of_rat(BigRat(p)), g});
                    if (J == P.I) {
                        P.second_gen = g;
                        found = true;
                    }
                }
        if (!found) throw std::runtime_error("factor_prime: no two-element generator found");
    }
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        if (a.fdeg != b.fdeg) return a.fdeg < b.fdeg;
        return det3(a.I.m) < det3(b.I.m);
    });
    return out;
}

long ideal_val(const CubicField& K, const FracIdeal& I, const PrimeIdeal& P) {
    // make integral: I * den
    FracIdeal J = I;
    long shift = 0;
    if (J.den != 1) {
        BigInt d = J.den;
        // (d) has valuation e * v_p(d)
        long vp = zval(d, P.p);
        shift = -P.e * vp;
        // J := I * d: clear denominator, then the part of d away from p is
        // irrelevant only if coprime to p -- handle exactly by multiplying
        FracIdeal dI;
        dI.den = 1;
        dI.m = J.m; // numerator lattice = I * den
        J = dI;
        // J = I*den exactly: valuation v(J) = v(I) + e*v_p(den)
    }
    FracIdeal Pinv = ideal_inv(K, P.I);
    long v = 0;
    FracIdeal cur = J;
    while (ideal_subset(K, cur, P.I)) {
        cur = ideal_mul(K, cur, Pinv);
        ++v;
        if (v > 4096) throw std::logic_error("ideal_val runaway");
    }
    return v + shift;
}

long elem_val(const CubicField& K, const NFElem& a, const PrimeIdeal& P) {
    if (a.is_zero()) throw std::domain_error("elem_val(0)");
    return ideal_val(K, ideal_principal(K, a), P);
}

std::vector<BigInt> smith_normal_form(std::vector<std::vector<BigInt>> m) {
    size_t R = m.size();
    if (R == 0) return {};
    size_t C = m[0].size();
    size_t t = 0;
    std::vector<BigInt> divs;
    while (t < R && t < C) {
        // find nonzero pivot
        size_t pr = SIZE_MAX, pc = SIZE_MAX;
        BigInt best = 0;
        for (size_t i = t; i < R; ++i)
            for (size_t j = t; j < C; ++j)
                if (m[i][j] != 0 && (best == 0 || abs(m[i][j]) < abs(best))) {
                    best = m[i][j];
                    pr = i;
                    pc = j;
                }
        if (pr == SIZE_MAX) break;
        std::swap(m[t], m[pr]);
        for (size_t i = 0; i < R; ++i) std::swap(m[i][t], m[i][pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < R; ++i) {
                if (m[i][t] == 0) continue;
                BigInt q = zfdiv(m[i][t], m[t][t]);
                for (size_t j = t; j < C; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < C; ++j) {
                if (m[t][j] == 0) continue;
                BigInt q = zfdiv(m[t][j], m[t][t]);
                for (size_t i = t; i < R; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (size_t i = 0; i < R; ++i) std::swap(m[i][t], m[i][j]);
                    clean = false;
                }
            }
        }
        ++t;
    }
    for (size_t i = 0; i < t; ++i) divs.push_back(abs(m[i][i]));
    // enforce divisibility chain
    for (size_t i = 0; i + 1 < divs.size(); ++i)
        for (size_t j = i + 1; j < divs.size(); ++j) {
            if (divs[j] % divs[i] != 0) {
                BigInt g = zgcd(divs[i], divs[j]);
                BigInt l = zdivexact(divs[i] * divs[j], g);
                divs[i] = g;
                divs[j] = l;
            }
        }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace esd
