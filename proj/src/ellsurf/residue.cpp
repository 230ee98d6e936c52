#include "ellsurf/residue.hpp"
#include "algebra/zfactor.hpp"

#include <stdexcept>

namespace esd {

NFResidue::NFResidue(RatPoly pi) : pi_(std::move(pi)) {
    if (pi_.deg() < 1) throw std::invalid_argument("NFResidue: constant modulus");
    pi_ = pi_.monic();
}

NFResidue::Elem NFResidue::inv(const Elem& a) const {
    RatPoly u, v;
    RatPoly g = xgcd(a.mod(pi_), pi_, u, v);
    if (g.deg() != 0) throw std::domain_error("NFResidue::inv: not invertible");
    return u.mod(pi_);
}

namespace {

// K[T] arithmetic with K = Q[t]/(pi); polynomials as coefficient vectors.
using KPoly = std::vector<RatPoly>;

void ktrim(KPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

KPoly kmul(const NFResidue& K, const KPoly& a, const KPoly& b) {
    if (a.empty() || b.empty()) return {};
    KPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = r[i + j] + K.mul(a[i], b[j]);
    ktrim(r);
    return r;
}

// f = q*g + r with g monic (in K[T])
void kdivmod(const NFResidue& K, const KPoly& f, const KPoly& g, KPoly& q, KPoly& r) {
    r = f;
    ktrim(r);
    if (g.empty()) throw std::domain_error("kdivmod: zero divisor");
    if (r.size() < g.size()) {
        q.clear();
        return;
    }
    q.assign(r.size() - g.size() + 1, RatPoly());
    while (r.size() >= g.size()) {
        RatPoly c = r.back(); // g monic
        size_t sh = r.size() - g.size();
        q[sh] = c;
        for (size_t i = 0; i < g.size(); ++i)
            r[sh + i] = r[sh + i] - K.mul(c, g[i]);
        r.pop_back();
        ktrim(r);
        if (r.empty()) break;
    }
    ktrim(q);
}

KPoly kmonic(const NFResidue& K, KPoly a) {
    ktrim(a);
    if (a.empty()) return a;
    RatPoly ilc = K.inv(a.back());
    for (auto& c : a) c = K.mul(c, ilc);
    return a;
}

KPoly kgcd(const NFResidue& K, KPoly a, KPoly b) {
    ktrim(a);
    ktrim(b);
    while (!b.empty()) {
        KPoly bm = kmonic(K, b);
        KPoly q, r;
        kdivmod(K, a, bm, q, r);
        a = std::move(bm);
        b = std::move(r);
    }
    return kmonic(K, a);
}

KPoly kderiv(const KPoly& a) {
    if (a.size() <= 1) return {};
    KPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * BigRat(static_cast<long>(i));
    ktrim(r);
    return r;
}

RatPoly interpolate(const std::vector<BigRat>& xs, const std::vector<BigRat>& ys) {
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
    return acc;
}

// Norm from K[T] to Q[T]: Res_t(pi(t), f(t, T)), by evaluation/interpolation.
RatPoly knorm(const NFResidue& K, const KPoly& f) {
    long dT = static_cast<long>(f.size()) - 1;
    long npts = K.degree() * dT + 2;
    std::vector<BigRat> xs, ys;
    long node = 0;
    while (static_cast<long>(xs.size()) < npts) {
        BigRat tau(node);
        RatPoly w;
        BigRat pw = 1;
        for (size_t j = 0; j < f.size(); ++j) {
            w = w + f[j] * pw;
            pw *= tau;
        }
        xs.push_back(tau);
        ys.push_back(w.is_zero() ? BigRat(0) : resultant(K.modulus(), w));
        node = node > 0 ? -node : -node + 1;
    }
    return interpolate(xs, ys);
}

} // namespace

bool NFResidue::is_square(const Elem& a) const {
    if (a.is_zero()) return true;
    std::vector<Elem> coeffs = {neg(reduce(a)), of_int(0), of_int(1)}; // T^2 - a
    return !roots(coeffs).empty();
}

std::vector<std::pair<NFResidue::Elem, int>> NFResidue::roots(const std::vector<Elem>& coeffs) const {
    std::vector<std::pair<Elem, int>> out;
    KPoly f;
    for (auto& c : coeffs) f.push_back(reduce(c));
    ktrim(f);
    if (f.size() <= 1) return out;
    f = kmonic(*this, f);

    // synthetic division by (T - r)
    auto divide_linear = [this](const KPoly& poly, const Elem& r, KPoly& quot, Elem& rem) {
        long n = static_cast<long>(poly.size()) - 1;
        quot.assign(n, RatPoly());
        Elem run = of_int(0);
        for (long i = n; i >= 1; --i) {
            run = add(mul(run, r), poly[i]);
            quot[i - 1] = run;
        }
        rem = add(mul(run, r), poly[0]);
    };
    auto multiplicity_in_f = [&](const Elem& r) {
        int m = 0;
        KPoly rest = f, quot;
        Elem rem;
        while (rest.size() >= 2) {
            divide_linear(rest, r, quot, rem);
            if (!rem.is_zero()) break;
            rest = quot;
            ++m;
        }
        return m;
    };

    if (f.size() == 2) {
        out.emplace_back(neg(f[0]), 1);
        return out;
    }

    // squarefree part
    KPoly fsq = f;
    {
        KPoly g = kgcd(*this, f, kderiv(f));
        if (g.size() > 1) {
            KPoly q, r;
            kdivmod(*this, f, g, q, r);
            fsq = q;
        }
    }
    if (fsq.size() == 2) {
        Elem r = neg(kmonic(*this, fsq)[0]);
        out.emplace_back(r, multiplicity_in_f(r));
        return out;
    }

    Elem theta = reduce(RatPoly::x());
    for (long s = 0; s < 40; ++s) {
        // g(T) = fsq(T - s*theta)
        KPoly shift_minus = {mul(of_int(-s), theta), of_int(1)};
        KPoly g;
        for (size_t i = fsq.size(); i-- > 0;) {
            g = kmul(*this, g, shift_minus);
            if (g.empty()) g = KPoly{fsq[i]};
            else g[0] = add(g[0], fsq[i]);
            ktrim(g);
        }
        RatPoly N = knorm(*this, g);
        if (N.deg() < 1) continue;
        if (gcd(N, N.derivative()).deg() != 0) continue;
        auto fac = factor_q(N);
        if (!fac.complete) throw BudgetExceeded("NFResidue::roots: factorization budget");
        KPoly shift_plus = {mul(of_int(s), theta), of_int(1)};
        for (auto& [h, mh] : fac.factors) {
            // gcd(fsq(T), h(T + s*theta)): a linear factor gives a root of fsq
            KPoly hK;
            for (long i = h.deg(); i >= 0; --i) {
                hK = kmul(*this, hK, shift_plus);
                if (hK.empty()) hK = KPoly{of_rat(h.coeff(i))};
                else hK[0] = add(hK[0], of_rat(h.coeff(i)));
                ktrim(hK);
            }
            KPoly G = kgcd(*this, fsq, hK);
            if (G.size() == 2) {
                Elem r = neg(G[0]); // fsq(r) = 0
                int m = multiplicity_in_f(r);
                if (m > 0) out.emplace_back(r, m);
            }
        }
        return out;
    }
    throw std::runtime_error("NFResidue::roots: no good Trager shift found");
}

FqResidue::FqResidue(FqCtxPtr base, FqPoly pi) : base_(std::move(base)), pi_(std::move(pi)) {
    if (base_->k() != 1) throw std::invalid_argument("FqResidue: base must be a prime field");
    std::vector<uint64_t> m;
    for (long i = 0; i <= pi_.deg(); ++i) m.push_back(pi_.coeff(i)[0]);
    kv_ = pi_.deg() == 1 ? FqCtx::prime_field(base_->p()) : FqCtx::extension(base_->p(), m);
}

FqResidue::Elem FqResidue::reduce(const FqPoly& f) const {
    FqPoly r = f.mod(pi_);
    if (pi_.deg() == 1) {
        return r.is_zero() ? kv_->zero() : r.coeff(0);
    }
    std::vector<uint64_t> v;
    for (long i = 0; i <= r.deg(); ++i) v.push_back(r.coeff(i)[0]);
    v.resize(kv_->k(), 0);
    return v;
}

FqPoly FqResidue::lift(const Elem& a) const {
    std::vector<FqElem> c;
    for (uint64_t x : a) c.push_back(base_->from_base(x));
    return FqPoly(base_, std::move(c));
}

FqResidue::Elem FqResidue::of_int(long n) const {
    long p = static_cast<long>(base_->p());
    long r = n % p;
    if (r < 0) r += p;
    return kv_->from_base(static_cast<uint64_t>(r));
}

std::vector<std::pair<FqResidue::Elem, int>> FqResidue::roots(const std::vector<Elem>& coeffs) const {
    std::vector<FqElem> c = coeffs;
    FqPoly f(kv_, std::move(c));
    return fq_roots(f);
}

} // namespace esd
