#ifndef ESD_DESCENT_DESCENT_HPP
#define ESD_DESCENT_DESCENT_HPP

#include "ellsurf/surface.hpp"
#include "ellsurf/ubr.hpp"
#include "numfield/classgroup.hpp"

#include <optional>
#include <variant>

namespace esd {

// rational function over Q(t), normalized: gcd(num, den) = 1, den monic
struct RatFunc {
    RatPoly num, den{BigRat(1)};

    static RatFunc of(RatPoly n, RatPoly d);
    static RatFunc poly(RatPoly n) { return RatFunc{std::move(n), RatPoly(BigRat(1))}; }
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    bool is_zero() const { return num.is_zero(); }
    bool operator==(const RatFunc& o) const;
    BigRat eval(const BigRat& t) const; // throws on pole
};

// point of E(Q(t)) on the short model y^2 = x^3 + A x + B
struct PointQt {
    bool infinity = true;
    RatFunc x, y;
    static PointQt O() { return {}; }
    static PointQt of(RatFunc x, RatFunc y) { return {false, std::move(x), std::move(y)}; }
};

bool qt_on_curve(const SurfaceQ& s, const PointQt& P);
PointQt qt_neg(const PointQt& P);
PointQt qt_add(const SurfaceQ& s, const PointQt& P, const PointQt& Q);
PointQt qt_mul(const SurfaceQ& s, const PointQt& P, long n);
// is P two-torsion (y = 0 on the short model)?
bool qt_is_two_torsion(const PointQt& P);

// points JSON: array of pairs of polynomial-or-rational-function entries;
// each coordinate is either a coefficient array (polynomial) or
// {"num": [...], "den": [...]} -- coordinates on the model in the file
std::vector<PointQt> points_from_json(const SurfaceQ& s, const nlohmann::json& j);
nlohmann::json points_to_json(const std::vector<PointQt>& pts);

struct DescentClass {
    PointQt P;
    bool trivial_double = false; // equals 2Q for a supplied point Q
};

// one class per supplied point; 2-torsion inputs rejected, doubles flagged
std::vector<DescentClass> descent_classes(const SurfaceQ& s, const std::vector<PointQt>& pts);

struct UniversalBadReduction : std::runtime_error {
    BigInt prime;
    explicit UniversalBadReduction(const BigInt& p)
        : std::runtime_error("surface has (or may have) universal bad reduction at " + zstr(p)),
          prime(p) {}
};

struct SpecializationPlan {
    // congruence t = t0 (mod modulus); T lists (p, witness residue, exponent)
    BigInt t0 = 0;
    BigInt modulus = 1;
    struct Entry {
        BigInt p;
        BigInt witness;
        long exponent;
    };
    std::vector<Entry> T;
    bool admits(const BigInt& t) const { return zmod(t - t0, modulus) == 0; }
    nlohmann::json to_json() const;
};

// T = candidate primes whose generic fiber is bad (the congruence-forcing
// set); every candidate must be NOT_UBR, else UniversalBadReduction.
SpecializationPlan choose_plan(const SurfaceQ& s, const std::vector<UbrVerdict>& ubr,
                               const BigInt& t0_hint = 0, long M = 3);

struct Rejection {
    enum Reason {
        SingularFiber,
        ReducibleFiber,
        FactorUnknown,
        OddValuation,
        UnitSearchFailed,
        DependentSubset,
        WitnessNotFound
    } reason;
    std::string detail;
    static const char* name(Reason r);
};

struct Cl2Certificate {
    BigInt t;
    RatPoly field_poly;    // monic integer cubic defining K_t
    int r1 = 0, r2 = 0;
    long bound = 0;        // certified dim_F2 Cl(K_t)[2] >= bound
    nlohmann::json data;   // full machine-checkable payload
};

using CertifyResult = std::variant<Cl2Certificate, Rejection>;

struct CertifyOptions {
    uint64_t factor_budget = 4'000'000;
    long unit_coord_bound = 24;
    std::vector<RatPoly> unit_hint_polys; // evaluated at t for unit hints
    uint64_t seed = kDefaultSeed;
};

CertifyResult certify(const SurfaceQ& s, const std::vector<PointQt>& pts, const BigInt& t,
                      const CertifyOptions& opt = {});

// re-check a certificate with no recomputation of the pipeline
bool verify_certificate(const nlohmann::json& cert, std::string* why = nullptr);

} // namespace esd

#endif
