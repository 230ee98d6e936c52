#include "algebra/fq.hpp"
#include "algebra/fqpoly.hpp"

#include <stdexcept>

namespace esd {

uint64_t Fp::inv(uint64_t a) const {
    if (a == 0) throw std::domain_error("Fp::inv(0)");
    // extended Euclid on signed 128-bit
    __int128 t = 0, newt = 1;
    __int128 r = p, newr = a;
    while (newr != 0) {
        __int128 q = r / newr;
        __int128 tmp = t - q * newt; t = newt; newt = tmp;
        tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1) throw std::domain_error("Fp::inv: not invertible");
    if (t < 0) t += p;
    return static_cast<uint64_t>(t);
}

FqCtx::FqCtx(uint64_t p, unsigned k, std::vector<uint64_t> modulus)
    : fp_{p}, k_(k), mod_(std::move(modulus)) {
    mpz_ui_pow_ui(q_.get_mpz_t(), p, k);
}

std::shared_ptr<const FqCtx> FqCtx::prime_field(uint64_t p) {
    std::vector<uint64_t> m = {0, 1}; // t (any monic linear works)
    return std::shared_ptr<const FqCtx>(new FqCtx(p, 1, std::move(m)));
}

std::shared_ptr<const FqCtx> FqCtx::extension(uint64_t p, const std::vector<uint64_t>& modulus) {
    if (modulus.size() < 2) throw std::invalid_argument("FqCtx: modulus must be nonconstant");
    std::vector<uint64_t> m = modulus;
    Fp fp{p};
    for (auto& c : m) c %= p;
    while (!m.empty() && m.back() == 0) m.pop_back();
    unsigned k = static_cast<unsigned>(m.size() - 1);
    if (m.back() != 1) { // normalize monic
        uint64_t s = fp.inv(m.back());
        for (auto& c : m) c = fp.mul(c, s);
    }
    auto ctx = std::shared_ptr<const FqCtx>(new FqCtx(p, k, m));
    if (k > 1 && !fqpoly_is_irreducible_over_prime(p, m))
        throw std::invalid_argument("FqCtx: reducible modulus");
    return ctx;
}

std::shared_ptr<const FqCtx> FqCtx::make(uint64_t p, unsigned k, uint64_t seed) {
    if (k == 1) return prime_field(p);
    Rng rng(seed ^ (p * 1000003ULL + k));
    for (int tries = 0; tries < 20000; ++tries) {
        std::vector<uint64_t> m(k + 1);
        m[k] = 1;
        for (unsigned i = 0; i < k; ++i) m[i] = rng.below(p);
        if (fqpoly_is_irreducible_over_prime(p, m))
            return std::shared_ptr<const FqCtx>(new FqCtx(p, k, std::move(m)));
    }
    throw std::runtime_error("FqCtx::make: no irreducible modulus found");
}

FqElem FqCtx::from_poly(const std::vector<uint64_t>& poly) const {
    // reduce mod mod_ by schoolbook division
    std::vector<uint64_t> r = poly;
    for (auto& c : r) c %= fp_.p;
    while (r.size() > k_) {
        uint64_t lead = r.back();
        size_t d = r.size() - 1;
        if (lead != 0) {
            // r -= lead * t^{d-k} * mod_
            for (size_t i = 0; i <= k_; ++i) {
                size_t idx = d - k_ + i;
                r[idx] = fp_.sub(r[idx], fp_.mul(lead, mod_[i]));
            }
        }
        r.pop_back();
    }
    r.resize(k_, 0);
    return r;
}

bool FqCtx::is_zero(const FqElem& a) const {
    for (uint64_t c : a)
        if (c != 0) return false;
    return true;
}

bool FqCtx::eq(const FqElem& a, const FqElem& b) const {
    for (unsigned i = 0; i < k_; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

FqElem FqCtx::add(const FqElem& a, const FqElem& b) const {
    FqElem r(k_);
    for (unsigned i = 0; i < k_; ++i) r[i] = fp_.add(a[i], b[i]);
    return r;
}

FqElem FqCtx::sub(const FqElem& a, const FqElem& b) const {
    FqElem r(k_);
    for (unsigned i = 0; i < k_; ++i) r[i] = fp_.sub(a[i], b[i]);
    return r;
}

FqElem FqCtx::neg(const FqElem& a) const {
    FqElem r(k_);
    for (unsigned i = 0; i < k_; ++i) r[i] = fp_.neg(a[i]);
    return r;
}

FqElem FqCtx::mul(const FqElem& a, const FqElem& b) const {
    if (k_ == 1) return {fp_.mul(a[0], b[0])};
    std::vector<uint64_t> prod(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < k_; ++j) {
            if (b[j] == 0) continue;
            prod[i + j] = fp_.add(prod[i + j], fp_.mul(a[i], b[j]));
        }
    }
    return from_poly(prod);
}

FqElem FqCtx::mul_base(const FqElem& a, uint64_t s) const {
    FqElem r(k_);
    s %= fp_.p;
    for (unsigned i = 0; i < k_; ++i) r[i] = fp_.mul(a[i], s);
    return r;
}

FqElem FqCtx::inv(const FqElem& a) const {
    if (is_zero(a)) throw std::domain_error("FqCtx::inv(0)");
    if (k_ == 1) return {fp_.inv(a[0])};
    // a^(q-2)
    return pow(a, q_ - 2);
}

FqElem FqCtx::pow(FqElem a, BigInt e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    FqElem r = one();
    size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (size_t i = nbits; i-- > 0;) {
        r = mul(r, r);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a);
    }
    return r;
}

bool FqCtx::is_square(const FqElem& a) const {
    if (is_zero(a)) return true;
    if (fp_.p == 2) return true; // Frobenius is bijective
    BigInt e = (q_ - 1) / 2;
    FqElem t = pow(a, e);
    return eq(t, one());
}

FqElem FqCtx::element_of_index(uint64_t idx) const {
    FqElem e(k_);
    for (unsigned i = 0; i < k_; ++i) {
        e[i] = idx % fp_.p;
        idx /= fp_.p;
    }
    return e;
}

} // namespace esd
