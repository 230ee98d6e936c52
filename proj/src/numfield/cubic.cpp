#include "numfield/cubic.hpp"
#include "algebra/fqpoly.hpp"
#include "algebra/zfactor.hpp"
#include "numfield/hnf.hpp"

#include <algorithm>
#include <stdexcept>

namespace esd {

namespace {

// rational 3-vector coordinates of a power-basis element
std::array<BigRat, 3> coords(const NFElem& a) {
    return {a.coeff(0), a.coeff(1), a.coeff(2)};
}

NFElem from_coords(const std::array<BigRat, 3>& c) {
    return RatPoly(std::vector<BigRat>{c[0], c[1], c[2]});
}

// lattice membership: is a (power coords) in L?
bool lattice_contains(const Lattice3& L, const NFElem& a) {
    // solve x * M = den * a over Q, check integrality (M lower triangular)
    std::array<BigRat, 3> target = coords(a);
    for (auto& t : target) t *= BigRat(L.den);
    // back substitution: rows of M are generators
    std::array<BigRat, 3> x;
    for (int i = 2; i >= 0; --i) {
        BigRat acc = target[i];
        for (int j = i + 1; j < 3; ++j) acc -= x[j] * BigRat(L.m[j][i]);
        x[i] = acc / BigRat(L.m[i][i]);
    }
    for (auto& xi : x)
        if (xi.get_den() != 1) return false;
    return true;
}

Lattice3 lattice_from_rows(std::vector<std::array<BigRat, 3>> rows) {
    BigInt den = 1;
    for (auto& r : rows)
        for (auto& c : r) den = zlcm(den, c.get_den());
    std::vector<std::array<BigInt, 3>> zrows;
    for (auto& r : rows) {
        std::array<BigInt, 3> zr;
        for (int i = 0; i < 3; ++i) {
            BigRat v = r[i] * BigRat(den);
            zr[i] = v.get_num();
        }
        zrows.push_back(zr);
    }
    Lattice3 L;
    L.m = hnf3(std::move(zrows));
    L.den = den;
    // normalize: divide den and matrix by common content
    BigInt g = L.den;
    for (auto& r : L.m)
        for (auto& c : r) g = zgcd(g, c);
    if (g > 1) {
        L.den = zdivexact(L.den, g);
        for (auto& r : L.m)
            for (auto& c : r) c = zdivexact(c, g);
    }
    return L;
}

NFElem lattice_gen(const Lattice3& L, int i) {
    std::array<BigRat, 3> c;
    for (int j = 0; j < 3; ++j) c[j] = BigRat(L.m[i][j], L.den);
    for (auto& x : c) x.canonicalize();
    return from_coords(c);
}

// the multiplicative closure of a lattice containing 1 (an order when it stabilizes)
Lattice3 ring_closure(const RatPoly& f, Lattice3 L) {
    for (int guard = 0; guard < 64; ++guard) {
        std::vector<std::array<BigRat, 3>> rows;
        std::array<NFElem, 3> w;
        for (int i = 0; i < 3; ++i) {
            w[i] = lattice_gen(L, i);
            rows.push_back(coords(w[i]));
        }
        bool closed = true;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                NFElem pr = (w[i] * w[j]).mod(f);
                if (!lattice_contains(L, pr)) closed = false;
                rows.push_back(coords(pr));
            }
        if (closed) return L;
        L = lattice_from_rows(std::move(rows));
    }
    throw std::logic_error("ring_closure: did not stabilize");
}

// discriminant of the order with the given basis
BigInt order_disc(const CubicField& K, const Lattice3& L) {
    std::array<NFElem, 3> w;
    for (int i = 0; i < 3; ++i) w[i] = lattice_gen(L, i);
    std::array<std::array<BigRat, 3>, 3> T;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) T[i][j] = K.trace((w[i] * w[j]).mod(K.f));
    BigRat det = T[0][0] * (T[1][1] * T[2][2] - T[1][2] * T[2][1]) -
                 T[0][1] * (T[1][0] * T[2][2] - T[1][2] * T[2][0]) +
                 T[0][2] * (T[1][0] * T[2][1] - T[1][1] * T[2][0]);
    if (det.get_den() != 1) throw std::logic_error("order_disc: non-integral");
    return det.get_num();
}

// one round of the p-maximality enlargement (Pohst-Zassenhaus).
// Returns true if the order grew.
bool enlarge_at_p(const RatPoly& f, Lattice3& L, const BigInt& p) {
    auto Fp = FqCtx::prime_field(p.get_ui());
    auto& fp = Fp->fp();
    std::array<NFElem, 3> w;
    for (int i = 0; i < 3; ++i) w[i] = lattice_gen(L, i);
    // structure constants: w_i w_j = sum c_ijk w_k with integer c
    // coordinates of an element in the w-basis
    auto w_coords = [&](const NFElem& a) {
        std::array<BigRat, 3> t = coords(a);
        for (auto& x : t) x *= BigRat(L.den);
        std::array<BigRat, 3> out;
        for (int i = 2; i >= 0; --i) {
            BigRat acc = t[i];
            for (int j = i + 1; j < 3; ++j) acc -= out[j] * BigRat(L.m[j][i]);
            out[i] = acc / BigRat(L.m[i][i]);
        }
        return out;
    };
    // Frobenius-power matrix: x -> x^(p^e), p^e >= 3
    long e = (p == 2) ? 2 : 1;
    std::array<std::array<uint64_t, 3>, 3> M{}; // column i = image of w_i
    for (int i = 0; i < 3; ++i) {
        // w_i^(p^e) mod f, coordinates in w-basis mod p
        NFElem acc = w[i];
        BigInt pe = zpow(p, e);
        // binary powering in the field
        NFElem result(BigRat(1));
        NFElem base = w[i];
        BigInt ee = pe;
        while (ee > 0) {
            if (zmod(ee, BigInt(2)) == 1) result = (result * base).mod(f);
            base = (base * base).mod(f);
            ee = zfdiv(ee, BigInt(2));
        }
        auto c = w_coords(result);
        for (int k = 0; k < 3; ++k) {
            if (c[k].get_den() != 1) throw std::logic_error("enlarge_at_p: non-integral coords");
            M[k][i] = fp.reduce_int(c[k].get_num());
        }
    }
    // kernel of M over F_p
    std::vector<std::array<uint64_t, 3>> kernel;
    {
        // gaussian elimination on a copy (3x3)
        std::array<std::array<uint64_t, 3>, 3> A = M;
        std::array<int, 3> pivot_col{-1, -1, -1};
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
            pivot_col[rank] = c;
            ++rank;
        }
        // free columns give kernel vectors
        std::array<bool, 3> is_pivot{false, false, false};
        for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
        for (int c = 0; c < 3; ++c) {
            if (is_pivot[c]) continue;
            std::array<uint64_t, 3> v{0, 0, 0};
            v[c] = 1;
            for (int r = 0; r < rank; ++r) v[pivot_col[r]] = fp.neg(A[r][c]);
            kernel.push_back(v);
        }
    }
    // radical ideal I_p = pL + span(kernel lifts); generators as lattice rows
    std::vector<std::array<BigRat, 3>> Irows;
    for (int i = 0; i < 3; ++i) {
        auto c = coords(w[i]);
        for (auto& x : c) x *= BigRat(p);
        Irows.push_back(c);
    }
    for (auto& v : kernel) {
        NFElem g(BigRat(0));
        for (int i = 0; i < 3; ++i)
            g = g + w[i] * BigRat(BigInt(static_cast<unsigned long>(v[i])));
        Irows.push_back(coords(g));
    }
    Lattice3 Ip = lattice_from_rows(std::move(Irows));
    std::array<NFElem, 3> gI;
    for (int i = 0; i < 3; ++i) gI[i] = lattice_gen(Ip, i);
    // idealizer: x in (1/p) L with x * I_p subset I_p
    // x = (1/p) sum y_i w_i, y_i in {0..p-1}: conditions linear over F_p
    // For each generator g_j: x*g_j in I_p <=> sum y_i (w_i g_j) in p I_p
    // Solve on coordinates in the I_p basis mod p.
    auto Ip_coords = [&](const NFElem& a) {
        std::array<BigRat, 3> t = coords(a);
        for (auto& x : t) x *= BigRat(Ip.den);
        std::array<BigRat, 3> out;
        for (int i = 2; i >= 0; --i) {
            BigRat acc = t[i];
            for (int j = i + 1; j < 3; ++j) acc -= out[j] * BigRat(Ip.m[j][i]);
            out[i] = acc / BigRat(Ip.m[i][i]);
        }
        return out;
    };
    // build 9x3 system over F_p
    std::vector<std::array<uint64_t, 3>> eqs;
    for (int j = 0; j < 3; ++j) {
        // rows: coefficient of y_i in coordinate k of (w_i gI_j)/p over Ip-basis
        std::array<std::array<BigRat, 3>, 3> col;
        for (int i = 0; i < 3; ++i) col[i] = Ip_coords((w[i] * gI[j]).mod(f));
        for (int k = 0; k < 3; ++k) {
            std::array<uint64_t, 3> eq{};
            for (int i = 0; i < 3; ++i) {
                // need (1/p) * col[i][k] integral: coefficient mod p
                BigRat c = col[i][k];
                if (c.get_den() != 1) throw std::logic_error("enlarge_at_p: idealizer coords");
                eq[i] = fp.reduce_int(c.get_num());
            }
            eqs.push_back(eq);
        }
    }
    // solve eqs * y = 0 over F_p
    std::vector<std::array<uint64_t, 3>> ker2;
    {
        std::vector<std::array<uint64_t, 3>> A = eqs;
        std::array<int, 3> pivot_col{-1, -1, -1};
        size_t rank = 0;
        for (int c = 0; c < 3 && rank < A.size(); ++c) {
            size_t pr = SIZE_MAX;
            for (size_t r = rank; r < A.size(); ++r)
                if (A[r][c] != 0) { pr = r; break; }
            if (pr == SIZE_MAX) continue;
            std::swap(A[rank], A[pr]);
            uint64_t inv = fp.inv(A[rank][c]);
            for (int j = 0; j < 3; ++j) A[rank][j] = fp.mul(A[rank][j], inv);
            for (size_t r = 0; r < A.size(); ++r) {
                if (r == rank || A[r][c] == 0) continue;
                uint64_t v = A[r][c];
                for (int j = 0; j < 3; ++j) A[r][j] = fp.sub(A[r][j], fp.mul(v, A[rank][j]));
            }
            pivot_col[rank] = c;
            ++rank;
        }
        std::array<bool, 3> is_pivot{false, false, false};
        for (size_t r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
        for (int c = 0; c < 3; ++c) {
            if (is_pivot[c]) continue;
            std::array<uint64_t, 3> v{0, 0, 0};
            v[c] = 1;
            for (size_t r = 0; r < rank; ++r) v[pivot_col[r]] = fp.neg(A[r][c]);
            ker2.push_back(v);
        }
    }
    if (ker2.empty()) return false;
    // grow the order
    std::vector<std::array<BigRat, 3>> rows;
    for (int i = 0; i < 3; ++i) rows.push_back(coords(w[i]));
    bool grew = false;
    for (auto& y : ker2) {
        NFElem x(BigRat(0));
        for (int i = 0; i < 3; ++i)
            x = x + w[i] * BigRat(BigInt(static_cast<unsigned long>(y[i])));
        x = x * BigRat(BigInt(1), p);
        if (!lattice_contains(L, x)) grew = true;
        rows.push_back(coords(x));
    }
    if (!grew) return false;
    L = ring_closure(f, lattice_from_rows(std::move(rows)));
    return true;
}

int sturm_real_roots(const RatPoly& f) {
    // number of real roots via Sturm sequence sign changes at -inf / +inf
    std::vector<RatPoly> seq = {f, f.derivative()};
    while (seq.back().deg() > 0) {
        RatPoly q, r;
        RatPoly::divmod(seq[seq.size() - 2], seq.back(), q, r);
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    auto sign_at_inf = [](const RatPoly& g, int dir) {
        if (g.is_zero()) return 0;
        int s = g.lc() > 0 ? 1 : -1;
        if (dir < 0 && g.deg() % 2 == 1) s = -s;
        return s;
    };
    int changes_lo = 0, changes_hi = 0;
    int prev_lo = 0, prev_hi = 0;
    for (auto& g : seq) {
        int slo = sign_at_inf(g, -1), shi = sign_at_inf(g, +1);
        if (slo != 0) {
            if (prev_lo != 0 && slo != prev_lo) ++changes_lo;
            prev_lo = slo;
        }
        if (shi != 0) {
            if (prev_hi != 0 && shi != prev_hi) ++changes_hi;
            prev_hi = shi;
        }
    }
    return changes_lo - changes_hi;
}

} // namespace

NFElem CubicField::inv(const NFElem& a) const {
    RatPoly u, v;
    RatPoly g = xgcd(a.mod(f), f, u, v);
    if (g.deg() != 0) throw std::domain_error("CubicField::inv: not invertible");
    return u.mod(f);
}

BigRat CubicField::norm(const NFElem& a) const {
    if (a.is_zero()) return BigRat(0);
    return resultant(f, a.mod(f));
}

BigRat CubicField::trace(const NFElem& a) const {
    // power sums of the roots
    BigRat c2 = f.coeff(2), c1 = f.coeff(1);
    BigRat s1 = -c2, s2 = c2 * c2 - 2 * c1;
    NFElem b = a.mod(f);
    return 3 * b.coeff(0) + s1 * b.coeff(1) + s2 * b.coeff(2);
}

RatPoly CubicField::min_poly(const NFElem& ain) const {
    NFElem a = ain.mod(f);
    if (a.deg() <= 0) return RatPoly({-a.coeff(0), BigRat(1)});
    // char poly = Res_x(f(x), T - a(x)) via interpolation in T
    std::vector<BigRat> xs, ys;
    for (long node = 0; node < 5; ++node) {
        BigRat tau(node);
        RatPoly w = RatPoly(tau) - a;
        xs.push_back(tau);
        ys.push_back(resultant(f, w));
    }
    // Lagrange interpolation
    RatPoly acc;
    for (size_t i = 0; i < xs.size(); ++i) {
        RatPoly li(BigRat(1));
        BigRat den = 1;
        for (size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            li = li * RatPoly({-xs[j], BigRat(1)});
            den *= xs[i] - xs[j];
        }
        acc = acc + li * (ys[i] / den);
    }
    RatPoly cp = acc.monic();
    // minimal polynomial: cp or its cubic-root structure; for cubic fields a
    // non-rational element has min poly = char poly
    RatPoly g = gcd(cp, cp.derivative());
    if (g.deg() > 0) {
        // a generates a subfield: only possible if a is rational (degree 1)
        RatPoly m = cp.divexact(g);
        return m.monic();
    }
    return cp;
}

std::array<BigRat, 3> CubicField::to_basis(const NFElem& a) const {
    std::array<BigRat, 3> t = coords(a.mod(f));
    for (auto& x : t) x *= BigRat(basis.den);
    std::array<BigRat, 3> out;
    for (int i = 2; i >= 0; --i) {
        BigRat acc = t[i];
        for (int j = i + 1; j < 3; ++j) acc -= out[j] * BigRat(basis.m[j][i]);
        out[i] = acc / BigRat(basis.m[i][i]);
    }
    return out;
}

NFElem CubicField::from_basis(const std::array<BigRat, 3>& c) const {
    NFElem acc(BigRat(0));
    for (int i = 0; i < 3; ++i) acc = acc + w(i) * c[i];
    return acc.mod(f);
}

bool CubicField::is_integral(const NFElem& a) const {
    for (auto& c : to_basis(a))
        if (c.get_den() != 1) return false;
    return true;
}

NFElem CubicField::w(int i) const { return lattice_gen(basis, i); }

std::vector<RI> CubicField::real_roots(mpfr_prec_t prec) const {
    // f irreducible over Q: no rational roots, so sign evaluations never vanish.
    std::vector<RatPoly> seq = {f, f.derivative()};
    while (seq.back().deg() > 0) {
        RatPoly q, r;
        RatPoly::divmod(seq[seq.size() - 2], seq.back(), q, r);
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    auto V = [&](const BigRat& x) {
        int changes = 0, prev = 0;
        for (auto& g : seq) {
            BigRat v = g.eval(x);
            int s = v == 0 ? 0 : (v > 0 ? 1 : -1);
            if (s != 0) {
                if (prev != 0 && s != prev) ++changes;
                prev = s;
            }
        }
        return changes;
    };
    BigRat M(1);
    for (long i = 0; i < 3; ++i) {
        BigRat c = abs(f.coeff(i));
        if (c > M) M = c;
    }
    M += 1; // Cauchy bound for a monic cubic
    std::vector<std::pair<BigRat, BigRat>> iso;
    std::vector<std::pair<BigRat, BigRat>> stack = {{-M, M}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        int n = V(a) - V(b);
        if (n <= 0) continue;
        if (n == 1) {
            iso.emplace_back(a, b);
            continue;
        }
        BigRat mid = (a + b) / 2;
        stack.push_back({a, mid});
        stack.push_back({mid, b});
    }
    std::sort(iso.begin(), iso.end(), [](auto& x, auto& y) { return x.first < y.first; });
    auto sgn = [&](const BigRat& x) { return f.eval(x) > 0 ? 1 : -1; };
    std::vector<RI> out;
    for (auto& [a0, b0] : iso) {
        BigRat a = a0, b = b0;
        int sa = sgn(a);
        long steps = static_cast<long>(prec) + 8;
        for (long i = 0; i < steps; ++i) {
            BigRat mid = (a + b) / 2;
            if (sgn(mid) == sa) a = mid;
            else b = mid;
        }
        RI ra = RI::from_rat(a, prec), rb = RI::from_rat(b, prec);
        RI hullv(0, prec);
        mpfr_min(hullv.lo, ra.lo, rb.lo, MPFR_RNDD);
        mpfr_max(hullv.hi, ra.hi, rb.hi, MPFR_RNDU);
        out.push_back(hullv);
    }
    return out;
}

std::vector<RI> CubicField::real_embeddings(const NFElem& ain, mpfr_prec_t prec) const {
    NFElem a = ain.mod(f);
    std::vector<RI> out;
    for (auto& rho : real_roots(prec)) {
        RI acc(0, prec);
        for (long i = a.deg(); i >= 0; --i)
            acc = acc * rho + RI::from_rat(a.coeff(i), prec);
        out.push_back(acc);
    }
    return out;
}

void CubicField::complex_embedding(const NFElem& ain, mpfr_prec_t prec, RI& re, RI& im) const {
    if (r2 != 1) throw std::logic_error("complex_embedding: totally real field");
    NFElem a = ain.mod(f);
    RI rho = real_roots(prec)[0];
    // deflate: f = (x - rho)(x^2 + b1 x + b0)
    RI c2 = RI::from_rat(f.coeff(2), prec), c1 = RI::from_rat(f.coeff(1), prec);
    RI b1 = c2 + rho;
    RI b0 = c1 + (c2 + rho) * rho;
    RI re_root = -b1.mul2exp(-1);
    RI disc = b0.mul2exp(2) - b1 * b1; // 4 b0 - b1^2 > 0
    RI im_root = disc.sqrt().mul2exp(-1);
    // evaluate a at re_root + i*im_root
    re = RI(0, prec);
    im = RI(0, prec);
    for (long i = a.deg(); i >= 0; --i) {
        RI nre = re * re_root - im * im_root + RI::from_rat(a.coeff(i), prec);
        RI nim = re * im_root + im * re_root;
        re = nre;
        im = nim;
    }
}

std::vector<RI> CubicField::abs_embeddings(const NFElem& ain, mpfr_prec_t prec) const {
    NFElem a = ain.mod(f);
    std::vector<RI> out;
    auto re = real_embeddings(a, prec);
    for (auto& v : re) out.push_back(v.abs());
    if (r2 == 1) {
        // |sigma_C(a)|^2 = |N(a)| / |sigma_R(a)|
        RI nrm = RI::from_rat(abs(norm(a)), prec);
        RI c2 = nrm / out[0];
        out.push_back(c2.sqrt());
    }
    return out;
}

namespace {

CubicField build_common(const RatPoly& fin, const std::vector<BigInt>& primes, bool all_known,
                        const std::vector<BigInt>& unknown) {
    RatPoly f = fin;
    if (f.deg() != 3 || !f.is_integral() || f.lc() != 1)
        throw std::invalid_argument("build_field: monic integer cubic required");
    if (!q_is_irreducible(f)) throw std::invalid_argument("build_field: reducible cubic");
    CubicField K;
    K.f = f;
    K.disc_f = discriminant(f).get_num();
    // start from Z[theta]
    Lattice3 L;
    L.den = 1;
    L.m = {{{BigInt(1), BigInt(0), BigInt(0)},
            {BigInt(0), BigInt(1), BigInt(0)},
            {BigInt(0), BigInt(0), BigInt(1)}}};
    for (auto& p : primes) {
        // enlarge while possible at p
        if (zval(K.disc_f, p) < 2) {
            K.maximal_at.push_back(p);
            continue; // p^2 does not divide disc => p-maximal already
        }
        while (enlarge_at_p(f, L, p)) {}
        K.maximal_at.push_back(p);
    }
    K.basis = L;
    K.dK = order_disc(K, L);
    BigInt idx2 = zdivexact(K.disc_f, K.dK);
    if (!zis_square(idx2, &K.index)) throw std::logic_error("build_field: index not square");
    K.maximal_everywhere = all_known;
    K.disc_complete = all_known;
    K.disc_unknown = unknown;
    K.r1 = sturm_real_roots(f);
    K.r2 = (3 - K.r1) / 2;
    if (K.r1 != 1 && K.r1 != 3) throw std::logic_error("build_field: signature");
    return K;
}

} // namespace

CubicField build_field(const RatPoly& f, uint64_t factor_budget, uint64_t seed) {
    RatPoly g = f;
    if (g.deg() != 3) throw std::invalid_argument("build_field: cubic required");
    BigInt D = discriminant(g).get_num();
    auto fac = factor_int(D, factor_budget, seed);
    std::vector<BigInt> primes;
    for (auto& [p, e] : fac.factors)
        if (e >= 2) primes.push_back(p);
    return build_common(g, primes, fac.complete, fac.unknown);
}

CubicField build_field_at(const RatPoly& f, const std::vector<BigInt>& S) {
    return build_common(f, S, false, {});
}

} // namespace esd
