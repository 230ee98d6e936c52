#ifndef ESD_HEIGHTS_INTERVAL_HPP
#define ESD_HEIGHTS_INTERVAL_HPP

#include "algebra/numbers.hpp"

#include <mpfr.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace esd {

struct PrecisionLoss : std::runtime_error {
    explicit PrecisionLoss(const std::string& w) : std::runtime_error(w) {}
};

// Closed real interval [lo, hi] with mpfr endpoints; every operation rounds
// outward, so any chain of operations encloses the exact real value.
class RI {
  public:
    RI();
    explicit RI(long v, mpfr_prec_t prec = 192);
    RI(const RI& o);
    RI(RI&& o) noexcept;
    RI& operator=(const RI& o);
    RI& operator=(RI&& o) noexcept;
    ~RI();

    static RI from_rat(const BigRat& x, mpfr_prec_t prec);
    static RI from_int(const BigInt& x, mpfr_prec_t prec);
    static RI hull(double lo, double hi, mpfr_prec_t prec); // outward from doubles

    mpfr_prec_t prec() const { return prec_; }

    RI operator+(const RI& o) const;
    RI operator-(const RI& o) const;
    RI operator*(const RI& o) const;
    RI operator/(const RI& o) const; // throws PrecisionLoss if o contains 0
    RI operator-() const;

    RI abs() const;
    RI max1() const;            // max(|x|, 1)
    RI vmax(const RI& o) const; // elementwise interval of max(x, y)
    RI log() const;             // requires lo > 0
    RI sqrt() const;            // requires lo >= 0
    RI mul2exp(long k) const;   // exact scale by 2^k
    RI div_ui(unsigned long k) const;

    bool contains_zero() const;
    bool is_positive() const; // lo > 0
    bool is_negative() const; // hi < 0
    double width() const;
    double mid() const;
    double lo_d() const;
    double hi_d() const;
    std::string str() const;

    // widen symmetrically by [-e, +e]
    RI pad(const RI& e) const;
    static RI exact_zero(mpfr_prec_t prec);

    mpfr_t lo, hi;

  private:
    mpfr_prec_t prec_;
    void init(mpfr_prec_t p);
};

// interval evaluation of an integer polynomial (constant first) at x
RI eval_zpoly(const std::vector<BigInt>& coeffs, const RI& x);

} // namespace esd

#endif
