#ifndef ESD_NUMFIELD_CUBIC_HPP
#define ESD_NUMFIELD_CUBIC_HPP

#include "algebra/intfactor.hpp"
#include "algebra/ratpoly.hpp"
#include "heights/interval.hpp"

#include <array>
#include <optional>
#include <vector>

namespace esd {

// Element of the cubic field Q[x]/(f): polynomial of degree < 3 in theta.
using NFElem = RatPoly;

// 3x3 integer matrix with common denominator; rows are lattice generators in
// power-basis coordinates (1, theta, theta^2).
struct Lattice3 {
    std::array<std::array<BigInt, 3>, 3> m; // row-major, HNF (lower triangular)
    BigInt den = 1;

    bool operator==(const Lattice3& o) const { return m == o.m && den == o.den; }
};

class CubicField {
  public:
    RatPoly f;       // monic irreducible integer cubic
    BigInt disc_f;
    BigInt index = 1;      // [O : Z[theta]] for the constructed order O
    BigInt dK = 0;         // disc(O); equals the field discriminant when maximal everywhere
    Lattice3 basis;        // integral basis of O over (1, theta, theta^2)
    int r1 = 0, r2 = 0;
    bool maximal_everywhere = false; // proven maximal at all primes
    std::vector<BigInt> maximal_at;  // primes where maximality is proven
    bool disc_complete = false;
    std::vector<BigInt> disc_unknown;

    // ---- element arithmetic (power basis representation) ----
    NFElem mul(const NFElem& a, const NFElem& b) const { return (a * b).mod(f); }
    NFElem inv(const NFElem& a) const;
    BigRat norm(const NFElem& a) const;
    BigRat trace(const NFElem& a) const;
    RatPoly min_poly(const NFElem& a) const; // monic, degree 1 or 3
    NFElem theta() const { return RatPoly::x(); }
    NFElem of_rat(const BigRat& r) const { return RatPoly(r); }

    // coordinates over the integral basis
    std::array<BigRat, 3> to_basis(const NFElem& a) const;
    NFElem from_basis(const std::array<BigRat, 3>& c) const;
    bool is_integral(const NFElem& a) const;

    // basis elements as field elements
    NFElem w(int i) const;

    // ---- embeddings ----
    // real roots of f as certified intervals (1 or 3 of them), then the
    // complex pair magnitude comes from the norm
    std::vector<RI> real_roots(mpfr_prec_t prec) const;
    // |sigma_i(a)| for all archimedean places: r1 real values followed by r2
    // complex magnitudes
    std::vector<RI> abs_embeddings(const NFElem& a, mpfr_prec_t prec) const;
    // signed real embeddings
    std::vector<RI> real_embeddings(const NFElem& a, mpfr_prec_t prec) const;
    // for signature (1,1): Re and Im of the complex embedding
    void complex_embedding(const NFElem& a, mpfr_prec_t prec, RI& re, RI& im) const;
};

// full construction: factor disc(f), prove maximality at every prime found;
// flagged (maximal_everywhere = false) if the factorization is incomplete
CubicField build_field(const RatPoly& f, uint64_t factor_budget = 2'000'000,
                       uint64_t seed = kDefaultSeed);

// S-maximal construction: prove maximality only at the given primes
CubicField build_field_at(const RatPoly& f, const std::vector<BigInt>& S);

} // namespace esd

#endif
