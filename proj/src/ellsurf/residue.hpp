#ifndef ESD_ELLSURF_RESIDUE_HPP
#define ESD_ELLSURF_RESIDUE_HPP

#include "algebra/fqpoly.hpp"
#include "algebra/ratpoly.hpp"

#include <array>
#include <vector>

namespace esd {

// Residue field Q[t]/(pi) of a closed point of P^1_Q. Elements are reduced
// representatives (RatPoly of degree < deg pi). Root finding over the residue
// field goes through Trager's norm trick, so only rational factorization is
// ever needed.
class NFResidue {
  public:
    using Elem = RatPoly;

    explicit NFResidue(RatPoly pi); // monic irreducible over Q (not re-verified)

    const RatPoly& modulus() const { return pi_; }
    long degree() const { return pi_.deg(); }

    Elem reduce(const RatPoly& f) const { return f.mod(pi_); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const { return (a - b).is_zero(); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return (a * b).mod(pi_); }
    Elem inv(const Elem& a) const;
    Elem of_int(long n) const { return RatPoly(BigRat(n)); }
    Elem of_rat(const BigRat& r) const { return RatPoly(r); }

    bool is_square(const Elem& a) const; // a != 0
    // distinct roots (with multiplicities) in the residue field of
    // c[0] + c[1] T + ... + c[d] T^d, d <= 3
    std::vector<std::pair<Elem, int>> roots(const std::vector<Elem>& coeffs) const;

  private:
    RatPoly pi_;
};

// Residue field F_p[t]/(pi) = F_{p^d} of a closed point of P^1_{F_p}.
class FqResidue {
  public:
    using Elem = FqElem;

    FqResidue(FqCtxPtr base, FqPoly pi); // base prime field, pi monic irreducible

    const FqPoly& modulus() const { return pi_; }
    long degree() const { return pi_.deg(); }
    const FqCtxPtr& field() const { return kv_; }

    Elem reduce(const FqPoly& f) const;
    FqPoly lift(const Elem& a) const;
    bool is_zero(const Elem& a) const { return kv_->is_zero(a); }
    bool eq(const Elem& a, const Elem& b) const { return kv_->eq(a, b); }
    Elem add(const Elem& a, const Elem& b) const { return kv_->add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return kv_->sub(a, b); }
    Elem neg(const Elem& a) const { return kv_->neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return kv_->mul(a, b); }
    Elem inv(const Elem& a) const { return kv_->inv(a); }
    Elem of_int(long n) const;

    bool is_square(const Elem& a) const { return kv_->is_square(a); }
    std::vector<std::pair<Elem, int>> roots(const std::vector<Elem>& coeffs) const;

  private:
    FqCtxPtr base_;
    FqPoly pi_;
    FqCtxPtr kv_;
};

} // namespace esd

#endif
