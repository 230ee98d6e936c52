#include "heights/interval.hpp"

#include <algorithm>
#include <sstream>

namespace esd {

void RI::init(mpfr_prec_t p) {
    prec_ = p;
    mpfr_init2(lo, p);
    mpfr_init2(hi, p);
}

RI::RI() { init(192); mpfr_set_zero(lo, 1); mpfr_set_zero(hi, 1); }

RI::RI(long v, mpfr_prec_t prec) {
    init(prec);
    mpfr_set_si(lo, v, MPFR_RNDD);
    mpfr_set_si(hi, v, MPFR_RNDU);
}

RI::RI(const RI& o) {
    init(o.prec_);
    mpfr_set(lo, o.lo, MPFR_RNDD);
    mpfr_set(hi, o.hi, MPFR_RNDU);
}

RI::RI(RI&& o) noexcept {
    prec_ = o.prec_;
    lo[0] = o.lo[0];
    hi[0] = o.hi[0];
    mpfr_init2(o.lo, 2);
    mpfr_init2(o.hi, 2);
}

RI& RI::operator=(const RI& o) {
    if (this == &o) return *this;
    mpfr_set_prec(lo, o.prec_);
    mpfr_set_prec(hi, o.prec_);
    prec_ = o.prec_;
    mpfr_set(lo, o.lo, MPFR_RNDD);
    mpfr_set(hi, o.hi, MPFR_RNDU);
    return *this;
}

RI& RI::operator=(RI&& o) noexcept {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo, o.lo);
    mpfr_swap(hi, o.hi);
    return *this;
}

RI::~RI() {
    mpfr_clear(lo);
    mpfr_clear(hi);
}

RI RI::from_rat(const BigRat& x, mpfr_prec_t prec) {
    RI r(0, prec);
    mpfr_set_q(r.lo, x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi, x.get_mpq_t(), MPFR_RNDU);
    return r;
}

RI RI::from_int(const BigInt& x, mpfr_prec_t prec) {
    RI r(0, prec);
    mpfr_set_z(r.lo, x.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi, x.get_mpz_t(), MPFR_RNDU);
    return r;
}

RI RI::hull(double a, double b, mpfr_prec_t prec) {
    RI r(0, prec);
    mpfr_set_d(r.lo, std::min(a, b), MPFR_RNDD);
    mpfr_set_d(r.hi, std::max(a, b), MPFR_RNDU);
    return r;
}

RI RI::exact_zero(mpfr_prec_t prec) { return RI(0, prec); }

RI RI::operator+(const RI& o) const {
    RI r(0, std::max(prec_, o.prec_));
    mpfr_add(r.lo, lo, o.lo, MPFR_RNDD);
    mpfr_add(r.hi, hi, o.hi, MPFR_RNDU);
    return r;
}

RI RI::operator-(const RI& o) const {
    RI r(0, std::max(prec_, o.prec_));
    mpfr_sub(r.lo, lo, o.hi, MPFR_RNDD);
    mpfr_sub(r.hi, hi, o.lo, MPFR_RNDU);
    return r;
}

RI RI::operator-() const {
    RI r(0, prec_);
    mpfr_neg(r.lo, hi, MPFR_RNDD);
    mpfr_neg(r.hi, lo, MPFR_RNDU);
    return r;
}

RI RI::operator*(const RI& o) const {
    RI r(0, std::max(prec_, o.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec());
    // lo = min of the four products rounded down, hi = max rounded up
    const mpfr_srcptr a[2] = {lo, hi};
    const mpfr_srcptr b[2] = {o.lo, o.hi};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t, a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo) < 0) mpfr_set(r.lo, t, MPFR_RNDD);
            mpfr_mul(t, a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi) > 0) mpfr_set(r.hi, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

RI RI::operator/(const RI& o) const {
    if (o.contains_zero()) throw PrecisionLoss("interval division by interval containing 0");
    RI r(0, std::max(prec_, o.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec());
    const mpfr_srcptr a[2] = {lo, hi};
    const mpfr_srcptr b[2] = {o.lo, o.hi};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_div(t, a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo) < 0) mpfr_set(r.lo, t, MPFR_RNDD);
            mpfr_div(t, a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi) > 0) mpfr_set(r.hi, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

RI RI::abs() const {
    RI r(0, prec_);
    if (mpfr_sgn(lo) >= 0) return *this;
    if (mpfr_sgn(hi) <= 0) return -*this;
    // straddles zero
    mpfr_set_zero(r.lo, 1);
    mpfr_t t;
    mpfr_init2(t, prec_);
    mpfr_neg(t, lo, MPFR_RNDU);
    if (mpfr_cmp(t, hi) > 0) mpfr_set(r.hi, t, MPFR_RNDU);
    else mpfr_set(r.hi, hi, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

RI RI::max1() const {
    RI a = abs();
    if (mpfr_cmp_ui(a.lo, 1) < 0) mpfr_set_ui(a.lo, 1, MPFR_RNDD);
    if (mpfr_cmp_ui(a.hi, 1) < 0) mpfr_set_ui(a.hi, 1, MPFR_RNDU);
    return a;
}

RI RI::vmax(const RI& o) const {
    RI r(0, std::max(prec_, o.prec_));
    mpfr_max(r.lo, lo, o.lo, MPFR_RNDD);
    mpfr_max(r.hi, hi, o.hi, MPFR_RNDU);
    return r;
}

RI RI::log() const {
    if (mpfr_sgn(lo) <= 0) throw PrecisionLoss("interval log of non-positive interval");
    RI r(0, prec_);
    mpfr_log(r.lo, lo, MPFR_RNDD);
    mpfr_log(r.hi, hi, MPFR_RNDU);
    return r;
}

RI RI::sqrt() const {
    if (mpfr_sgn(lo) < 0) throw PrecisionLoss("interval sqrt of negative interval");
    RI r(0, prec_);
    mpfr_sqrt(r.lo, lo, MPFR_RNDD);
    mpfr_sqrt(r.hi, hi, MPFR_RNDU);
    return r;
}

RI RI::mul2exp(long k) const {
    RI r(0, prec_);
    mpfr_mul_2si(r.lo, lo, k, MPFR_RNDD);
    mpfr_mul_2si(r.hi, hi, k, MPFR_RNDU);
    return r;
}

RI RI::div_ui(unsigned long k) const {
    RI r(0, prec_);
    mpfr_div_ui(r.lo, lo, k, MPFR_RNDD);
    mpfr_div_ui(r.hi, hi, k, MPFR_RNDU);
    return r;
}

bool RI::contains_zero() const { return mpfr_sgn(lo) <= 0 && mpfr_sgn(hi) >= 0; }
bool RI::is_positive() const { return mpfr_sgn(lo) > 0; }
bool RI::is_negative() const { return mpfr_sgn(hi) < 0; }

double RI::width() const {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_sub(t, hi, lo, MPFR_RNDU);
    double w = mpfr_get_d(t, MPFR_RNDU);
    mpfr_clear(t);
    return w;
}

double RI::mid() const {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_add(t, lo, hi, MPFR_RNDN);
    mpfr_div_ui(t, t, 2, MPFR_RNDN);
    double m = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return m;
}

double RI::lo_d() const { return mpfr_get_d(lo, MPFR_RNDD); }
double RI::hi_d() const { return mpfr_get_d(hi, MPFR_RNDU); }

std::string RI::str() const {
    std::ostringstream os;
    os << "[" << lo_d() << ", " << hi_d() << "]";
    return os.str();
}

RI RI::pad(const RI& e) const {
    RI r(0, prec_);
    mpfr_sub(r.lo, lo, e.hi, MPFR_RNDD);
    mpfr_add(r.hi, hi, e.hi, MPFR_RNDU);
    return r;
}

RI eval_zpoly(const std::vector<BigInt>& coeffs, const RI& x) {
    RI acc(0, x.prec());
    for (size_t i = coeffs.size(); i-- > 0;) {
        acc = acc * x + RI::from_int(coeffs[i], x.prec());
    }
    return acc;
}

} // namespace esd
