#ifndef ESD_ELLSURF_SURFACE_HPP
#define ESD_ELLSURF_SURFACE_HPP

#include "algebra/fqpoly.hpp"
#include "algebra/ratpoly.hpp"
#include "algebra/zfactor.hpp"
#include "ellsurf/kodaira.hpp"

#include <json.hpp>
#include <optional>
#include <variant>
#include <vector>

namespace esd {

// Elliptic surface over k(t) in long Weierstrass form, k = Q.
// Derived data: b-invariants, c4/c6, discriminant, and the short model
// y^2 = x^3 + A x + B with A = -27 c4, B = -54 c6 (valid away from 2, 3;
// its discriminant is 6^12 times the long-model one).
struct SurfaceQ {
    RatPoly a1, a2, a3, a4, a6;
    RatPoly b2, b4, b6, b8, c4, c6, delta;
    RatPoly A, B;

    static SurfaceQ make(RatPoly a1, RatPoly a2, RatPoly a3, RatPoly a4, RatPoly a6);
    static SurfaceQ make_short(RatPoly A, RatPoly B); // y^2 = x^3 + A x + B
    bool integral() const;

    // chart at infinity: t = 1/s, (x, y) -> (x/s^{2m}, y/s^{3m});
    // returns (A_inf, B_inf, m) for the short model
    void infinity_chart(RatPoly& Ai, RatPoly& Bi, long& m) const;
};

struct SurfaceFq {
    FqCtxPtr F; // prime field (Tate requires char >= 5)
    FqPoly a1, a2, a3, a4, a6;
    FqPoly b2, b4, b6, b8, c4, c6, delta;
    FqPoly A, B;

    static SurfaceFq make(FqCtxPtr F, FqPoly a1, FqPoly a2, FqPoly a3, FqPoly a4, FqPoly a6);
    void infinity_chart(FqPoly& Ai, FqPoly& Bi, long& m) const;
};

using Surface = std::variant<SurfaceQ, SurfaceFq>;

Surface surface_from_json(const nlohmann::json& j);
nlohmann::json surface_to_json(const Surface& s);

// one bad fiber
struct KodairaFiber {
    bool at_infinity = false;
    std::string place;       // polynomial string, or "infinity"
    long place_degree = 1;
    KodairaSymbol sym;
    long v_delta = 0;
    long tamagawa = 1;
    bool split = false;
    std::string geom_components;
};

struct SurfaceReport {
    std::vector<KodairaFiber> fibers; // bad places only
    bool delta_factor_complete = true;

    long count_c_divisible(long p) const;
    long count_I2nstar_rational() const;  // geometric type I_{2n}* with Phi(k_v) = (Z/2)^2
    long count_I2nstar_geometric() const; // geometric type I_{2n}* regardless of rationality
    long sum_vdelta_deg() const;          // sum of v(Delta_min) * deg(place) over bad fibers
    long conductor_degree() const;        // tame conductor degree

    nlohmann::json to_json() const;
};

// run Tate at every bad place (finite places from the factored discriminant,
// plus the place at infinity when it is bad)
SurfaceReport analyze_surface(const Surface& s, uint64_t seed = kDefaultSeed);

// Tate at a single named place. pi must be monic irreducible.
KodairaFiber tate_at_place_q(const SurfaceQ& s, const RatPoly& pi);
KodairaFiber tate_at_place_q_infinity(const SurfaceQ& s);
KodairaFiber tate_at_place_fq(const SurfaceFq& s, const FqPoly& pi);
KodairaFiber tate_at_place_fq_infinity(const SurfaceFq& s);

// Theorem-shaped bound calculators (pure arithmetic on the report).
long picard_rank_bound(const SurfaceReport& rep, long p, long mw_rank_lb);
long class_rank_bound(const SurfaceReport& rep, long p, long mw_rank_lb,
                      long unit_rank_L, long unit_rank_k);

// Ulmer family E_n: y^2 + xy = x^3 - t^d over F_q(t), d = q^n + 1 (q >= 5 prime).
SurfaceFq ulmer_surface(uint64_t q, unsigned n);
BigRat ulmer_rank_term(uint64_t q, unsigned n); // (q^n - 1) / (2n)
KodairaSymbol ulmer_infinity_type(uint64_t q, unsigned n);

} // namespace esd

#endif
