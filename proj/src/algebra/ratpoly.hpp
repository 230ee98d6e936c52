#ifndef ESD_ALGEBRA_RATPOLY_HPP
#define ESD_ALGEBRA_RATPOLY_HPP

#include "algebra/numbers.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace esd {

// Dense univariate polynomial over Q, constant term first.
// Invariant: leading coefficient nonzero unless the polynomial is zero
// (empty coefficient vector).
class RatPoly {
  public:
    RatPoly() = default;
    explicit RatPoly(BigRat c) { if (c != 0) c_.push_back(std::move(c)); }
    explicit RatPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static RatPoly x();                       // the monomial t
    static RatPoly monomial(BigRat c, size_t k);
    static RatPoly from_int_coeffs(const std::vector<long>& coeffs);

    bool is_zero() const { return c_.empty(); }
    long deg() const { return static_cast<long>(c_.size()) - 1; } // -1 for zero
    const BigRat& lc() const { return c_.back(); }
    BigRat coeff(size_t k) const { return k < c_.size() ? c_[k] : BigRat(0); }
    const std::vector<BigRat>& coeffs() const { return c_; }
    bool is_constant() const { return c_.size() <= 1; }

    RatPoly operator-() const;
    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator-(const RatPoly& o) const;
    RatPoly operator*(const RatPoly& o) const;
    RatPoly operator*(const BigRat& s) const;
    bool operator==(const RatPoly& o) const { return c_ == o.c_; }

    // f = q*g + r, deg r < deg g; throws on zero divisor
    static void divmod(const RatPoly& f, const RatPoly& g, RatPoly& q, RatPoly& r);
    RatPoly divexact(const RatPoly& g) const; // asserts remainder 0
    RatPoly mod(const RatPoly& g) const;

    RatPoly derivative() const;
    RatPoly monic() const;
    BigRat eval(const BigRat& x) const;
    RatPoly shift(const BigRat& c) const;       // f(x + c)
    RatPoly scale_arg(const BigRat& s) const;   // f(s*x)
    RatPoly reverse(long n) const;              // x^n f(1/x), n >= deg

    // content over Q (gcd of numerators / lcm of denominators, sign of lc)
    // and the primitive integer polynomial part: *this == content * primitive
    BigRat content() const;
    RatPoly primitive() const;
    bool is_integral() const;

    // multiplicity of the monic irreducible pi in *this (0 if coprime)
    long val_at(const RatPoly& pi) const;
    RatPoly divexact_pow(const RatPoly& pi, long k) const;

    std::string str(const std::string& var = "t") const;

  private:
    void trim() { while (!c_.empty() && c_.back() == 0) c_.pop_back(); }
    std::vector<BigRat> c_;
};

RatPoly gcd(const RatPoly& a, const RatPoly& b);          // monic gcd
// g = gcd, and u*a + v*b = g
RatPoly xgcd(const RatPoly& a, const RatPoly& b, RatPoly& u, RatPoly& v);
BigRat resultant(const RatPoly& a, const RatPoly& b);
BigRat discriminant(const RatPoly& f);

// Yun squarefree decomposition: f = lc * prod_i f_i^i with f_i monic squarefree,
// pairwise coprime. Returned as (f_i, i) with nonconstant f_i only.
std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& f);

} // namespace esd

#endif
