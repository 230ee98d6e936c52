#ifndef ESD_ALGEBRA_FQ_HPP
#define ESD_ALGEBRA_FQ_HPP

#include "algebra/numbers.hpp"
#include "common/util.hpp"

#include <memory>
#include <vector>

namespace esd {

// Arithmetic mod a word-sized prime p (p < 2^62).
struct Fp {
    uint64_t p;
    uint64_t add(uint64_t a, uint64_t b) const { uint64_t s = a + b; return s >= p ? s - p : s; }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p - a; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1 % p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint64_t inv(uint64_t a) const;
    uint64_t reduce_int(const BigInt& a) const {
        BigInt r = zmod(a, BigInt(static_cast<unsigned long>(p)));
        return r.get_ui();
    }
};

// Element of F_{p^k}: coefficient vector of length k over F_p (basis 1, z, ..., z^{k-1}).
using FqElem = std::vector<uint64_t>;

// The field F_q, q = p^k. For k >= 2 arithmetic is modulo a monic irreducible
// modulus polynomial over F_p.
class FqCtx {
  public:
    static std::shared_ptr<const FqCtx> prime_field(uint64_t p);
    // modulus: monic irreducible over F_p, coefficients constant-first, deg k >= 1;
    // irreducibility is verified.
    static std::shared_ptr<const FqCtx> extension(uint64_t p, const std::vector<uint64_t>& modulus);
    // deterministic search for an irreducible modulus of degree k
    static std::shared_ptr<const FqCtx> make(uint64_t p, unsigned k, uint64_t seed = kDefaultSeed);

    uint64_t p() const { return fp_.p; }
    unsigned k() const { return k_; }
    const BigInt& q() const { return q_; }
    const Fp& fp() const { return fp_; }
    const std::vector<uint64_t>& modulus() const { return mod_; }

    FqElem zero() const { return FqElem(k_, 0); }
    FqElem one() const { FqElem e(k_, 0); e[0] = 1 % fp_.p; return e; }
    FqElem from_base(uint64_t a) const { FqElem e(k_, 0); e[0] = a % fp_.p; return e; }
    FqElem from_int(const BigInt& a) const { return from_base(fp_.reduce_int(a)); }
    FqElem gen() const { FqElem e(k_, 0); if (k_ > 1) e[1] = 1; else e[0] = 0; return e; }
    // reduce an F_p[t] polynomial (constant-first) modulo the modulus; the class
    // of t becomes the generator. Requires k >= 1; for k == 1 evaluates at the
    // root of the (linear) modulus.
    FqElem from_poly(const std::vector<uint64_t>& poly) const;

    bool is_zero(const FqElem& a) const;
    bool eq(const FqElem& a, const FqElem& b) const;
    FqElem add(const FqElem& a, const FqElem& b) const;
    FqElem sub(const FqElem& a, const FqElem& b) const;
    FqElem neg(const FqElem& a) const;
    FqElem mul(const FqElem& a, const FqElem& b) const;
    FqElem mul_base(const FqElem& a, uint64_t s) const;
    FqElem inv(const FqElem& a) const;
    FqElem pow(FqElem a, BigInt e) const;
    bool is_square(const FqElem& a) const; // q odd; true for a == 0
    // enumerate elements (only sensible for small q); index in [0, p^k)
    FqElem element_of_index(uint64_t idx) const;

  private:
    FqCtx(uint64_t p, unsigned k, std::vector<uint64_t> modulus);
    Fp fp_;
    unsigned k_;
    std::vector<uint64_t> mod_; // monic, degree k (size k+1), empty for k==1? no: kept always
    BigInt q_;
};

using FqCtxPtr = std::shared_ptr<const FqCtx>;

} // namespace esd

#endif
