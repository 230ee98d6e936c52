#ifndef ESD_ALGEBRA_FQPOLY_HPP
#define ESD_ALGEBRA_FQPOLY_HPP

#include "algebra/fq.hpp"
#include "algebra/ratpoly.hpp"

#include <utility>
#include <vector>

namespace esd {

// Dense univariate polynomial over F_q, constant term first.
class FqPoly {
  public:
    FqPoly() = default;
    explicit FqPoly(FqCtxPtr F) : F_(std::move(F)) {}
    FqPoly(FqCtxPtr F, std::vector<FqElem> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) { trim(); }

    static FqPoly x(const FqCtxPtr& F);
    static FqPoly constant(const FqCtxPtr& F, FqElem c);
    // reduce integer-coefficient data mod p (prime-field constant embedding)
    static FqPoly from_ratpoly(const FqCtxPtr& F, const RatPoly& f); // throws if p | a denominator
    static FqPoly from_base_coeffs(const FqCtxPtr& F, const std::vector<uint64_t>& coeffs);

    const FqCtxPtr& field() const { return F_; }
    bool is_zero() const { return c_.empty(); }
    long deg() const { return static_cast<long>(c_.size()) - 1; }
    const FqElem& lc() const { return c_.back(); }
    FqElem coeff(size_t k) const { return k < c_.size() ? c_[k] : F_->zero(); }
    const std::vector<FqElem>& coeffs() const { return c_; }

    FqPoly operator+(const FqPoly& o) const;
    FqPoly operator-(const FqPoly& o) const;
    FqPoly operator*(const FqPoly& o) const;
    FqPoly operator-() const;
    FqPoly mul_elem(const FqElem& s) const;
    bool eq(const FqPoly& o) const;

    static void divmod(const FqPoly& f, const FqPoly& g, FqPoly& q, FqPoly& r);
    FqPoly mod(const FqPoly& g) const;
    FqPoly divexact(const FqPoly& g) const;
    FqPoly monic() const;
    FqPoly derivative() const;
    FqElem eval(const FqElem& x) const;
    FqPoly shift(const FqElem& c) const; // f(x+c)

    long val_at(const FqPoly& pi) const; // -1 for zero polynomial
    FqPoly divexact_pow(const FqPoly& pi, long k) const;

    std::string str(const std::string& var = "t") const;

  private:
    void trim() { while (!c_.empty() && F_->is_zero(c_.back())) c_.pop_back(); }
    FqCtxPtr F_;
    std::vector<FqElem> c_;
};

FqPoly fq_gcd(const FqPoly& a, const FqPoly& b); // monic
FqPoly fq_powmod(const FqPoly& base, const BigInt& e, const FqPoly& mod);

struct FqFactorization {
    FqElem unit; // leading unit: input = unit * prod factors^mult
    std::vector<std::pair<FqPoly, int>> factors;
};

// Complete factorization into monic irreducibles (squarefree / distinct-degree /
// equal-degree splitting). Deterministic given the seed.
FqFactorization factor_fq(const FqPoly& f, uint64_t seed = kDefaultSeed);

// distinct roots in F_q with multiplicities
std::vector<std::pair<FqElem, int>> fq_roots(const FqPoly& f, uint64_t seed = kDefaultSeed);

bool fq_is_irreducible(const FqPoly& f);
bool fqpoly_is_irreducible_over_prime(uint64_t p, const std::vector<uint64_t>& monic_modulus);

} // namespace esd

#endif
