#include "algebra/ratpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace esd {

RatPoly RatPoly::x() {
    std::vector<BigRat> c(2);
    c[1] = 1;
    return RatPoly(std::move(c));
}

RatPoly RatPoly::monomial(BigRat c, size_t k) {
    std::vector<BigRat> v(k + 1);
    v[k] = std::move(c);
    return RatPoly(std::move(v));
}

RatPoly RatPoly::from_int_coeffs(const std::vector<long>& coeffs) {
    std::vector<BigRat> v;
    v.reserve(coeffs.size());
    for (long a : coeffs) v.emplace_back(a);
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator-() const {
    std::vector<BigRat> v(c_);
    for (auto& a : v) a = -a;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    std::vector<BigRat> v(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < v.size(); ++i) {
        if (i < c_.size()) v[i] += c_[i];
        if (i < o.c_.size()) v[i] += o.c_[i];
    }
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
    std::vector<BigRat> v(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < v.size(); ++i) {
        if (i < c_.size()) v[i] += c_[i];
        if (i < o.c_.size()) v[i] -= o.c_[i];
    }
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return RatPoly();
    std::vector<BigRat> v(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            v[i + j] += c_[i] * o.c_[j];
        }
    }
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator*(const BigRat& s) const {
    if (s == 0) return RatPoly();
    std::vector<BigRat> v(c_);
    for (auto& a : v) a *= s;
    return RatPoly(std::move(v));
}

void RatPoly::divmod(const RatPoly& f, const RatPoly& g, RatPoly& q, RatPoly& r) {
    if (g.is_zero()) throw std::domain_error("RatPoly: division by zero polynomial");
    std::vector<BigRat> rem = f.c_;
    long dg = g.deg();
    long df = f.deg();
    if (df < dg) {
        q = RatPoly();
        r = f;
        return;
    }
    std::vector<BigRat> quo(df - dg + 1);
    BigRat inv_lc = BigRat(1) / g.lc();
    for (long k = df; k >= dg; --k) {
        if (rem[k] == 0) continue;
        BigRat c = rem[k] * inv_lc;
        quo[k - dg] = c;
        for (long j = 0; j <= dg; ++j) rem[k - dg + j] -= c * g.c_[j];
        rem[k] = 0; // exact cancellation
    }
    q = RatPoly(std::move(quo));
    r = RatPoly(std::move(rem));
}

RatPoly RatPoly::divexact(const RatPoly& g) const {
    RatPoly q, r;
    divmod(*this, g, q, r);
    if (!r.is_zero()) throw std::domain_error("RatPoly::divexact: nonzero remainder");
    return q;
}

RatPoly RatPoly::mod(const RatPoly& g) const {
    RatPoly q, r;
    divmod(*this, g, q, r);
    return r;
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return RatPoly();
    std::vector<BigRat> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * BigRat(static_cast<long>(i));
    return RatPoly(std::move(v));
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return *this;
    return *this * (BigRat(1) / lc());
}

BigRat RatPoly::eval(const BigRat& x) const {
    BigRat r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

RatPoly RatPoly::shift(const BigRat& c) const {
    // Horner: f(x + c)
    RatPoly res;
    RatPoly xc = RatPoly::x() + RatPoly(c);
    for (size_t i = c_.size(); i-- > 0;) res = res * xc + RatPoly(c_[i]);
    return res;
}

RatPoly RatPoly::scale_arg(const BigRat& s) const {
    std::vector<BigRat> v(c_);
    BigRat pw = 1;
    for (size_t i = 0; i < v.size(); ++i) {
        v[i] *= pw;
        pw *= s;
    }
    return RatPoly(std::move(v));
}

RatPoly RatPoly::reverse(long n) const {
    if (n < deg()) throw std::invalid_argument("RatPoly::reverse: n < deg");
    std::vector<BigRat> v(static_cast<size_t>(n) + 1);
    for (size_t i = 0; i < c_.size(); ++i) v[n - i] = c_[i];
    return RatPoly(std::move(v));
}

BigRat RatPoly::content() const {
    if (is_zero()) return BigRat(0);
    BigInt num_gcd = 0, den_lcm = 1;
    for (const auto& a : c_) {
        if (a == 0) continue;
        num_gcd = zgcd(num_gcd, a.get_num());
        den_lcm = zlcm(den_lcm, a.get_den());
    }
    BigRat c(num_gcd, den_lcm);
    c.canonicalize();
    if (lc() < 0) c = -c;
    return c;
}

RatPoly RatPoly::primitive() const {
    if (is_zero()) return *this;
    return *this * (BigRat(1) / content());
}

bool RatPoly::is_integral() const {
    for (const auto& a : c_)
        if (a.get_den() != 1) return false;
    return true;
}

long RatPoly::val_at(const RatPoly& pi) const {
    if (is_zero()) return -1; // +infinity marker
    long v = 0;
    RatPoly f = *this, q, r;
    for (;;) {
        divmod(f, pi, q, r);
        if (!r.is_zero()) return v;
        f = q;
        ++v;
    }
}

RatPoly RatPoly::divexact_pow(const RatPoly& pi, long k) const {
    RatPoly f = *this;
    for (long i = 0; i < k; ++i) f = f.divexact(pi);
    return f;
}

std::string RatPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        BigRat a = c_[i];
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        first = false;
        BigRat mag = abs(a);
        if (i == 0 || mag != 1) os << qstr(mag);
        if (i > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly f = a, g = b, r;
    while (!g.is_zero()) {
        r = f.mod(g);
        f = g;
        g = r;
        // keep coefficients small-ish; primitive part is gcd-neutral over Q
        if (!g.is_zero()) g = g.primitive();
    }
    if (f.is_zero()) return f;
    return f.monic();
}

RatPoly xgcd(const RatPoly& a, const RatPoly& b, RatPoly& u, RatPoly& v) {
    RatPoly r0 = a, r1 = b;
    RatPoly u0(BigRat(1)), u1, v0, v1(BigRat(1));
    while (!r1.is_zero()) {
        RatPoly q, r;
        RatPoly::divmod(r0, r1, q, r);
        r0 = r1; r1 = r;
        RatPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
        u0 = u1; u1 = u2;
        v0 = v1; v1 = v2;
    }
    if (r0.is_zero()) { u = RatPoly(); v = RatPoly(); return r0; }
    BigRat s = BigRat(1) / r0.lc();
    u = u0 * s;
    v = v0 * s;
    return r0 * s;
}

BigRat resultant(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return BigRat(0);
    // Euclidean recursion with explicit bookkeeping, exact over Q.
    RatPoly f = a, g = b;
    BigRat acc = 1;
    bool swapped = false;
    if (f.deg() < g.deg()) {
        std::swap(f, g);
        if ((a.deg() * b.deg()) % 2 == 1) acc = -acc;
    }
    for (;;) {
        if (g.deg() == 0) {
            BigRat lg = g.lc();
            BigRat pw = 1;
            for (long i = 0; i < f.deg(); ++i) pw *= lg;
            return acc * pw;
        }
        RatPoly r = f.mod(g);
        if (r.is_zero()) return BigRat(0);
        long df = f.deg(), dg = g.deg(), dr = r.deg();
        // res(f,g) = (-1)^{df*dg} lc(g)^{df-dr} res(g,r)
        BigRat pw = 1;
        for (long i = 0; i < df - dr; ++i) pw *= g.lc();
        acc *= pw;
        if ((df % 2) == 1 && (dg % 2) == 1) acc = -acc;
        f = g;
        g = r;
        (void)swapped;
    }
}

BigRat discriminant(const RatPoly& f) {
    if (f.deg() < 1) throw std::invalid_argument("discriminant of constant");
    BigRat r = resultant(f, f.derivative());
    r /= f.lc();
    long n = f.deg();
    if (((n * (n - 1)) / 2) % 2 == 1) r = -r;
    return r;
}

std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& f) {
    std::vector<std::pair<RatPoly, int>> out;
    if (f.deg() < 1) return out;
    RatPoly a = f.monic();
    RatPoly g = gcd(a, a.derivative());
    RatPoly w = a.divexact(g);
    int i = 1;
    while (w.deg() > 0) {
        RatPoly y = gcd(w, g);
        RatPoly fi = w.divexact(y);
        if (fi.deg() > 0) out.emplace_back(fi.monic(), i);
        w = y;
        g = g.divexact(y);
        ++i;
    }
    return out;
}

} // namespace esd
