#include "algebra/fqpoly.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace esd {

FqPoly FqPoly::x(const FqCtxPtr& F) {
    std::vector<FqElem> c = {F->zero(), F->one()};
    return FqPoly(F, std::move(c));
}

FqPoly FqPoly::constant(const FqCtxPtr& F, FqElem c) {
    std::vector<FqElem> v = {std::move(c)};
    return FqPoly(F, std::move(v));
}

FqPoly FqPoly::from_ratpoly(const FqCtxPtr& F, const RatPoly& f) {
    std::vector<FqElem> v;
    BigInt p(static_cast<unsigned long>(F->p()));
    v.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) {
        if (zmod(a.get_den(), p) == 0)
            throw std::domain_error("FqPoly::from_ratpoly: denominator divisible by p");
        uint64_t num = F->fp().reduce_int(a.get_num());
        uint64_t den = F->fp().reduce_int(a.get_den());
        v.push_back(F->from_base(F->fp().mul(num, F->fp().inv(den))));
    }
    return FqPoly(F, std::move(v));
}

FqPoly FqPoly::from_base_coeffs(const FqCtxPtr& F, const std::vector<uint64_t>& coeffs) {
    std::vector<FqElem> v;
    v.reserve(coeffs.size());
    for (uint64_t c : coeffs) v.push_back(F->from_base(c));
    return FqPoly(F, std::move(v));
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
    std::vector<FqElem> v(std::max(c_.size(), o.c_.size()), F_->zero());
    for (size_t i = 0; i < v.size(); ++i) {
        if (i < c_.size()) v[i] = F_->add(v[i], c_[i]);
        if (i < o.c_.size()) v[i] = F_->add(v[i], o.c_[i]);
    }
    return FqPoly(F_, std::move(v));
}

FqPoly FqPoly::operator-(const FqPoly& o) const {
    std::vector<FqElem> v(std::max(c_.size(), o.c_.size()), F_->zero());
    for (size_t i = 0; i < v.size(); ++i) {
        if (i < c_.size()) v[i] = F_->add(v[i], c_[i]);
        if (i < o.c_.size()) v[i] = F_->sub(v[i], o.c_[i]);
    }
    return FqPoly(F_, std::move(v));
}

FqPoly FqPoly::operator-() const {
    std::vector<FqElem> v(c_);
    for (auto& a : v) a = F_->neg(a);
    return FqPoly(F_, std::move(v));
}

FqPoly FqPoly::operator*(const FqPoly& o) const {
    if (is_zero() || o.is_zero()) return FqPoly(F_);
    std::vector<FqElem> v(c_.size() + o.c_.size() - 1, F_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (F_->is_zero(c_[i])) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (F_->is_zero(o.c_[j])) continue;
            v[i + j] = F_->add(v[i + j], F_->mul(c_[i], o.c_[j]));
        }
    }
    return FqPoly(F_, std::move(v));
}

FqPoly FqPoly::mul_elem(const FqElem& s) const {
    std::vector<FqElem> v(c_);
    for (auto& a : v) a = F_->mul(a, s);
    return FqPoly(F_, std::move(v));
}

bool FqPoly::eq(const FqPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (!F_->eq(c_[i], o.c_[i])) return false;
    return true;
}

void FqPoly::divmod(const FqPoly& f, const FqPoly& g, FqPoly& q, FqPoly& r) {
    if (g.is_zero()) throw std::domain_error("FqPoly: division by zero polynomial");
    const auto& F = f.F_;
    long df = f.deg(), dg = g.deg();
    if (df < dg) {
        q = FqPoly(F);
        r = f;
        return;
    }
    std::vector<FqElem> rem = f.c_;
    std::vector<FqElem> quo(df - dg + 1, F->zero());
    FqElem ilc = F->inv(g.lc());
    for (long k = df; k >= dg; --k) {
        if (F->is_zero(rem[k])) continue;
        FqElem c = F->mul(rem[k], ilc);
        quo[k - dg] = c;
        for (long j = 0; j <= dg; ++j)
            rem[k - dg + j] = F->sub(rem[k - dg + j], F->mul(c, g.c_[j]));
    }
    q = FqPoly(F, std::move(quo));
    r = FqPoly(F, std::move(rem));
}

FqPoly FqPoly::mod(const FqPoly& g) const {
    FqPoly q, r;
    divmod(*this, g, q, r);
    return r;
}

FqPoly FqPoly::divexact(const FqPoly& g) const {
    FqPoly q, r;
    divmod(*this, g, q, r);
    if (!r.is_zero()) throw std::domain_error("FqPoly::divexact: nonzero remainder");
    return q;
}

FqPoly FqPoly::monic() const {
    if (is_zero()) return *this;
    return mul_elem(F_->inv(lc()));
}

FqPoly FqPoly::derivative() const {
    if (c_.size() <= 1) return FqPoly(F_);
    std::vector<FqElem> v(c_.size() - 1, F_->zero());
    for (size_t i = 1; i < c_.size(); ++i)
        v[i - 1] = F_->mul_base(c_[i], i % F_->p());
    return FqPoly(F_, std::move(v));
}

FqElem FqPoly::eval(const FqElem& x) const {
    FqElem r = F_->zero();
    for (size_t i = c_.size(); i-- > 0;) r = F_->add(F_->mul(r, x), c_[i]);
    return r;
}

FqPoly FqPoly::shift(const FqElem& c) const {
    FqPoly res(F_);
    FqPoly xc = FqPoly::x(F_) + FqPoly::constant(F_, c);
    for (size_t i = c_.size(); i-- > 0;)
        res = res * xc + FqPoly::constant(F_, c_[i]);
    return res;
}

long FqPoly::val_at(const FqPoly& pi) const {
    if (is_zero()) return -1;
    long v = 0;
    FqPoly f = *this, q, r;
    for (;;) {
        divmod(f, pi, q, r);
        if (!r.is_zero()) return v;
        f = q;
        ++v;
    }
}

FqPoly FqPoly::divexact_pow(const FqPoly& pi, long k) const {
    FqPoly f = *this;
    for (long i = 0; i < k; ++i) f = f.divexact(pi);
    return f;
}

std::string FqPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (F_->is_zero(c_[i])) continue;
        if (!first) os << " + ";
        first = false;
        os << "(";
        bool f2 = true;
        for (size_t j = 0; j < c_[i].size(); ++j) {
            if (c_[i][j] == 0) continue;
            if (!f2) os << "+";
            f2 = false;
            os << c_[i][j];
            if (j > 0) os << "z^" << j;
        }
        if (f2) os << "0";
        os << ")";
        if (i > 0) os << var << "^" << i;
    }
    return os.str();
}

FqPoly fq_gcd(const FqPoly& a, const FqPoly& b) {
    FqPoly f = a, g = b;
    while (!g.is_zero()) {
        FqPoly r = f.mod(g);
        f = g;
        g = r;
    }
    if (f.is_zero()) return f;
    return f.monic();
}

FqPoly fq_powmod(const FqPoly& base, const BigInt& e, const FqPoly& mod) {
    const auto& F = base.field();
    FqPoly r = FqPoly::constant(F, F->one());
    FqPoly b = base.mod(mod);
    if (e == 0) return r;
    size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = nbits; i-- > 0;) {
        r = (r * r).mod(mod);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b).mod(mod);
    }
    return r;
}

namespace {

// p-th root of f (all exponents divisible by p, coefficients are p-th powers)
FqPoly pth_root(const FqPoly& f) {
    const auto& F = f.field();
    uint64_t p = F->p();
    unsigned k = F->k();
    // c -> c^{p^{k-1}} inverts Frobenius
    BigInt e = 1;
    for (unsigned i = 0; i + 1 < k; ++i) e *= static_cast<unsigned long>(p);
    std::vector<FqElem> v;
    v.resize(f.deg() / p + 1, F->zero());
    for (long i = 0; i <= f.deg(); i += p)
        v[i / p] = F->pow(f.coeff(i), e);
    return FqPoly(F, std::move(v));
}

void sff_rec(const FqPoly& f, int mult, std::vector<std::pair<FqPoly, int>>& out) {
    const auto& F = f.field();
    uint64_t p = F->p();
    if (f.deg() < 1) return;
    FqPoly df = f.derivative();
    if (df.is_zero()) {
        sff_rec(pth_root(f), mult * static_cast<int>(p), out);
        return;
    }
    FqPoly T = fq_gcd(f, df);
    FqPoly V = f.divexact(T);
    int k = 0;
    while (V.deg() > 0) {
        ++k;
        FqPoly W = fq_gcd(T, V);
        FqPoly A = V.divexact(W);
        if (A.deg() > 0) out.emplace_back(A.monic(), mult * k);
        V = W;
        T = T.divexact(W);
    }
    if (T.deg() > 0) sff_rec(pth_root(T), mult * static_cast<int>(p), out);
}

// distinct-degree split of a monic squarefree polynomial
std::vector<std::pair<FqPoly, long>> ddf(const FqPoly& fin) {
    std::vector<std::pair<FqPoly, long>> out;
    const auto& F = fin.field();
    FqPoly g = fin;
    FqPoly xp = FqPoly::x(F);
    FqPoly h = xp.mod(g);
    long d = 0;
    while (g.deg() >= 2 * (d + 1)) {
        ++d;
        h = fq_powmod(h, F->q(), g);
        FqPoly gd = fq_gcd(h - xp, g);
        if (gd.deg() > 0) {
            out.emplace_back(gd, d);
            g = g.divexact(gd);
            h = h.mod(g);
        }
    }
    if (g.deg() > 0) out.emplace_back(g, g.deg());
    return out;
}

FqPoly random_poly(const FqCtxPtr& F, long deg_below, Rng& rng) {
    std::vector<FqElem> v;
    for (long i = 0; i < deg_below; ++i) {
        FqElem e(F->k());
        for (unsigned j = 0; j < F->k(); ++j) e[j] = rng.below(F->p());
        v.push_back(std::move(e));
    }
    return FqPoly(F, std::move(v));
}

// equal-degree split: f monic squarefree, all irreducible factors of degree d
void edf(const FqPoly& f, long d, Rng& rng, std::vector<FqPoly>& out) {
    const auto& F = f.field();
    if (f.deg() == d) {
        out.push_back(f);
        return;
    }
    FqPoly g(F);
    for (;;) {
        FqPoly r = random_poly(F, f.deg(), rng);
        if (r.is_zero()) continue;
        g = fq_gcd(r, f);
        if (g.deg() > 0 && g.deg() < f.deg()) break;
        if (F->p() == 2) {
            // trace splitting: s = sum r^{2^i}, i < k*d
            FqPoly s(F), t = r.mod(f);
            unsigned m = F->k() * static_cast<unsigned>(d);
            for (unsigned i = 0; i < m; ++i) {
                s = (s + t).mod(f);
                t = (t * t).mod(f);
            }
            g = fq_gcd(s, f);
        } else {
            BigInt e = 1;
            for (long i = 0; i < d; ++i) e *= F->q();
            e = (e - 1) / 2;
            FqPoly s = fq_powmod(r, e, f);
            g = fq_gcd(s - FqPoly::constant(F, F->one()), f);
        }
        if (g.deg() > 0 && g.deg() < f.deg()) break;
    }
    edf(g, d, rng, out);
    edf(f.divexact(g), d, rng, out);
}

} // namespace

FqFactorization factor_fq(const FqPoly& f, uint64_t seed) {
    if (f.is_zero()) throw std::domain_error("factor_fq: zero polynomial");
    const auto& F = f.field();
    FqFactorization res;
    res.unit = f.lc();
    if (f.deg() == 0) return res;
    Rng rng(seed ^ 0x9e3779b9ULL);
    std::vector<std::pair<FqPoly, int>> sq;
    sff_rec(f.monic(), 1, sq);
    for (auto& [part, mult] : sq) {
        for (auto& [prod, d] : ddf(part)) {
            std::vector<FqPoly> irr;
            edf(prod, d, rng, irr);
            for (auto& h : irr) res.factors.emplace_back(h.monic(), mult);
        }
    }
    // deterministic order: by degree then lexicographic coefficient order
    std::sort(res.factors.begin(), res.factors.end(), [](const auto& A, const auto& B) {
        if (A.first.deg() != B.first.deg()) return A.first.deg() < B.first.deg();
        for (long i = A.first.deg(); i >= 0; --i) {
            const auto& a = A.first.coeff(i);
            const auto& b = B.first.coeff(i);
            if (a != b) return a < b;
        }
        return A.second < B.second;
    });
    return res;
}

std::vector<std::pair<FqElem, int>> fq_roots(const FqPoly& f, uint64_t seed) {
    const auto& F = f.field();
    std::vector<std::pair<FqElem, int>> out;
    if (f.deg() < 1) return out;
    // roots of gcd(x^q - x, f), multiplicities by repeated division
    FqPoly xp = FqPoly::x(F);
    FqPoly xq = fq_powmod(xp, F->q(), f);
    FqPoly g = fq_gcd(xq - xp, f);
    if (g.deg() == 0) return out;
    Rng rng(seed ^ 0x51ab3e77ULL);
    std::vector<FqPoly> lin;
    // g is squarefree and splits into linears
    std::vector<std::pair<FqPoly, long>> parts = {{g, 1}};
    edf(g, 1, rng, lin);
    for (auto& l : lin) {
        FqElem root = F->neg(l.monic().coeff(0));
        FqPoly lm = FqPoly::x(F) - FqPoly::constant(F, root);
        int m = 0;
        FqPoly h = f, q, r;
        for (;;) {
            FqPoly::divmod(h, lm, q, r);
            if (!r.is_zero()) break;
            h = q;
            ++m;
        }
        out.emplace_back(root, m);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

bool fq_is_irreducible(const FqPoly& fin) {
    FqPoly f = fin.monic();
    long n = f.deg();
    if (n <= 0) return false;
    if (n == 1) return true;
    const auto& F = f.field();
    FqPoly xp = FqPoly::x(F);
    // Rabin: x^{q^n} == x mod f, and gcd(x^{q^{n/l}} - x, f) = 1 for prime l | n
    std::vector<long> prime_divs;
    long m = n;
    for (long l = 2; l * l <= m; ++l)
        if (m % l == 0) {
            prime_divs.push_back(l);
            while (m % l == 0) m /= l;
        }
    if (m > 1) prime_divs.push_back(m);
    // iterated Frobenius: h_i = x^{q^i} mod f
    FqPoly h = xp.mod(f);
    std::vector<FqPoly> frob(n + 1, FqPoly(F));
    frob[0] = h;
    for (long i = 1; i <= n; ++i) {
        h = fq_powmod(h, F->q(), f);
        frob[i] = h;
    }
    if (!(frob[n] - xp.mod(f)).is_zero()) return false;
    for (long l : prime_divs) {
        FqPoly d = fq_gcd(frob[n / l] - xp.mod(f), f);
        if (d.deg() != 0) return false;
    }
    return true;
}

bool fqpoly_is_irreducible_over_prime(uint64_t p, const std::vector<uint64_t>& monic_modulus) {
    auto F = FqCtx::prime_field(p);
    FqPoly f = FqPoly::from_base_coeffs(F, monic_modulus);
    return fq_is_irreducible(f);
}

} // namespace esd
