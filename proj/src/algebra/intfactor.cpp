#include "algebra/intfactor.hpp"

#include <algorithm>
#include <map>

namespace esd {

std::vector<uint64_t> primes_up_to(uint64_t n) {
    std::vector<uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (uint64_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (uint64_t j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

namespace {

bool miller_rabin(const BigInt& n, const BigInt& a) {
    if (zmod(a, n) == 0) return true;
    BigInt d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    BigInt x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = zmod(x * x, n);
        if (x == n - 1) return true;
        if (x == 1) return false;
    }
    return false;
}

// strong Lucas test with Selfridge parameters (part of Baillie-PSW)
bool strong_lucas(const BigInt& n) {
    // find D = 5, -7, 9, -11, ... with jacobi(D, n) = -1
    BigInt D = 5;
    for (int i = 0;; ++i) {
        int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
        if (j == 0) return abs(D) == n; // shares a factor with n
        if (j == -1) break;
        if (i % 2 == 0) D = -(D + 2); else D = -(D - 2);
        if (i > 64) { // perfect square n never yields -1
            BigInt r;
            if (zis_square(n, &r)) return false;
        }
    }
    BigInt P = 1, Q = (1 - D) / 4;
    BigInt d = n + 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    // Lucas sequence by binary ladder on (U, V, Qk)
    BigInt U = 0, V = 2, Qk = 1;
    size_t bits = mpz_sizeinbase(d.get_mpz_t(), 2);
    BigInt inv2 = 0;
    {
        BigInt two = 2;
        mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), n.get_mpz_t());
    }
    for (size_t i = bits; i-- > 0;) {
        // double
        U = zmod(U * V, n);
        V = zmod(V * V - 2 * Qk, n);
        Qk = zmod(Qk * Qk, n);
        if (mpz_tstbit(d.get_mpz_t(), i)) {
            BigInt U2 = zmod((U + V) * inv2, n);
            BigInt V2 = zmod((D * U + V) * inv2, n);
            U = U2;
            V = V2;
            Qk = zmod(Qk * Q, n);
        }
    }
    if (U == 0 || V == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = zmod(V * V - 2 * Qk, n);
        if (V == 0) return true;
        Qk = zmod(Qk * Qk, n);
    }
    return false;
}

const char* kMRLimit = "3317044064679887385961981"; // Sorenson-Webster bound

} // namespace

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    static const int small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (int p : small) {
        if (n == p) return true;
        if (zmod(n, BigInt(p)) == 0) return false;
    }
    static const BigInt mr_limit(kMRLimit);
    if (n < mr_limit) {
        for (int a : small)
            if (!miller_rabin(n, BigInt(a))) return false;
        return true;
    }
    if (!miller_rabin(n, BigInt(2))) return false;
    return strong_lucas(n);
}

namespace {

bool certified_prime(const BigInt& n) {
    static const BigInt mr_limit(kMRLimit);
    return n < mr_limit && is_prime(n);
}

// Brent's variant of Pollard rho; returns a nontrivial factor or 0 on budget
// exhaustion. n odd composite, not a perfect power of a found factor.
BigInt brent_rho(const BigInt& n, uint64_t budget, Rng& rng) {
    if (zmod(n, BigInt(2)) == 0) return BigInt(2);
    for (int attempt = 0; attempt < 24; ++attempt) {
        BigInt c = BigInt(1 + static_cast<unsigned long>(rng.below(1 << 30)));
        BigInt y = BigInt(static_cast<unsigned long>(rng.below(1 << 30))), m = 128;
        BigInt g = 1, r = 1, q = 1, x, ys;
        uint64_t steps = 0;
        while (g == 1) {
            x = y;
            for (BigInt i = 0; i < r; ++i) y = zmod(y * y + c, n);
            BigInt k = 0;
            while (k < r && g == 1) {
                ys = y;
                BigInt rk = r - k;
                BigInt lim = m < rk ? m : rk;
                for (BigInt i = 0; i < lim; ++i) {
                    y = zmod(y * y + c, n);
                    BigInt d = x - y;
                    if (d < 0) d = -d;
                    q = zmod(q * d, n);
                }
                g = zgcd(q, n);
                k += m;
                steps += mpz_get_ui(lim.get_mpz_t());
                if (steps > budget) return BigInt(0);
            }
            r *= 2;
            if (steps > budget) return BigInt(0);
        }
        if (g == n) {
            // backtrack
            g = 1;
            while (g == 1) {
                ys = zmod(ys * ys + c, n);
                BigInt d = x - ys;
                if (d < 0) d = -d;
                g = zgcd(d, n);
            }
        }
        if (g != n && g != 1) return g;
    }
    return BigInt(0);
}

void factor_rec(const BigInt& n, uint64_t budget, Rng& rng,
                std::map<BigInt, int>& primes, std::vector<BigInt>& unknown) {
    if (n == 1) return;
    if (certified_prime(n)) {
        primes[n] += 1;
        return;
    }
    if (is_prime(n)) {
        // probable prime beyond the certified range: report honestly as unknown
        unknown.push_back(n);
        return;
    }
    // perfect power?
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long e = 2; e <= mpz_sizeinbase(n.get_mpz_t(), 2); ++e) {
            BigInt r;
            if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), e) != 0) {
                for (unsigned long i = 0; i < e; ++i) factor_rec(r, budget, rng, primes, unknown);
                return;
            }
        }
    }
    BigInt d = brent_rho(n, budget, rng);
    if (d == 0) {
        unknown.push_back(n);
        return;
    }
    factor_rec(d, budget, rng, primes, unknown);
    factor_rec(n / d, budget, rng, primes, unknown);
}

} // namespace

IntFactorization factor_int(const BigInt& n_in, uint64_t budget, uint64_t seed) {
    IntFactorization out;
    BigInt n = n_in;
    if (n < 0) {
        out.sign = -1;
        n = -n;
    }
    if (n == 0) throw std::domain_error("factor_int(0)");
    std::map<BigInt, int> primes;
    std::vector<BigInt> unknown;
    static const std::vector<uint64_t> small = primes_up_to(100000);
    for (uint64_t p : small) {
        if (n == 1) break;
        BigInt P(static_cast<unsigned long>(p));
        if (P * P > n) break;
        while (zmod(n, P) == 0) {
            primes[P] += 1;
            n /= P;
        }
    }
    if (n > 1) {
        Rng rng(seed ^ 0xfac7fac7ULL);
        factor_rec(n, budget, rng, primes, unknown);
    }
    for (auto& [p, e] : primes) out.factors.emplace_back(p, e);
    std::sort(unknown.begin(), unknown.end());
    out.unknown = std::move(unknown);
    out.complete = out.unknown.empty();
    return out;
}

PrimeDivisors prime_divisors(const BigInt& n, uint64_t budget, uint64_t seed) {
    PrimeDivisors out;
    if (n == 0) {
        out.complete = false;
        return out;
    }
    auto f = factor_int(n, budget, seed);
    for (auto& [p, e] : f.factors) out.primes.push_back(p);
    out.complete = f.complete;
    return out;
}

} // namespace esd
