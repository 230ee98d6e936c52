#ifndef ESD_ALGEBRA_NUMBERS_HPP
#define ESD_ALGEBRA_NUMBERS_HPP

#include <gmpxx.h>
#include <cstdint>
#include <string>
#include <vector>

namespace esd {

// Exact arithmetic substrate. BigRat is always kept in lowest terms with
// positive denominator (mpq_class canonicalizes).
using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigInt zpow(const BigInt& a, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

inline BigInt zgcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt zlcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt zdivexact(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// floor division and Euclidean residue
inline BigInt zfdiv(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt zmod(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// valuation of a != 0 at prime p; pairs with the cofactor a / p^v
inline long zval(BigInt a, const BigInt& p, BigInt* cof = nullptr) {
    long v = 0;
    if (a == 0) return -1; // caller treats as +infinity
    BigInt q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        a = q;
        ++v;
    }
    if (cof) *cof = a;
    return v;
}

inline long qval(const BigRat& x, const BigInt& p) {
    if (x == 0) return -1; // +infinity marker
    return zval(x.get_num(), p) - zval(x.get_den(), p);
}

inline bool zis_square(const BigInt& a, BigInt* root = nullptr) {
    if (a < 0) return false;
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    if (r * r == a) { if (root) *root = r; return true; }
    return false;
}

inline std::string zstr(const BigInt& a) { return a.get_str(); }

inline std::string qstr(const BigRat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

} // namespace esd

#endif
