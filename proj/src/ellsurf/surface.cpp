#include "ellsurf/surface.hpp"
#include "algebra/intfactor.hpp"
#include "algebra/poly_json.hpp"
#include "ellsurf/tate_ff.hpp"

#include <stdexcept>

namespace esd {

static FqPoly mulint_fq(const FqPoly& f, long n) {
    const auto& F = f.field();
    long p = static_cast<long>(F->p());
    long m = n % p;
    if (m < 0) m += p;
    return f.mul_elem(F->from_base(static_cast<uint64_t>(m)));
}

SurfaceQ SurfaceQ::make(RatPoly a1, RatPoly a2, RatPoly a3, RatPoly a4, RatPoly a6) {
    SurfaceQ s;
    s.a1 = a1; s.a2 = a2; s.a3 = a3; s.a4 = a4; s.a6 = a6;
    s.b2 = a1 * a1 + a2 * BigRat(4);
    s.b4 = a4 * BigRat(2) + a1 * a3;
    s.b6 = a3 * a3 + a6 * BigRat(4);
    s.b8 = a1 * a1 * a6 + (a2 * a6) * BigRat(4) - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    s.c4 = s.b2 * s.b2 - s.b4 * BigRat(24);
    s.c6 = -(s.b2 * s.b2 * s.b2) + (s.b2 * s.b4) * BigRat(36) - s.b6 * BigRat(216);
    s.delta = -(s.b2 * s.b2 * s.b8) - (s.b4 * s.b4 * s.b4) * BigRat(8)
              - (s.b6 * s.b6) * BigRat(27) + (s.b2 * s.b4 * s.b6) * BigRat(9);
    if (s.delta.is_zero()) throw std::invalid_argument("surface: delta = 0");
    s.A = s.c4 * BigRat(-27);
    s.B = s.c6 * BigRat(-54);
    return s;
}

SurfaceQ SurfaceQ::make_short(RatPoly A, RatPoly B) {
    return make(RatPoly(), RatPoly(), RatPoly(), A, B);
}

bool SurfaceQ::integral() const {
    return a1.is_integral() && a2.is_integral() && a3.is_integral() && a4.is_integral() &&
           a6.is_integral();
}

void SurfaceQ::infinity_chart(RatPoly& Ai, RatPoly& Bi, long& m) const {
    long dA = std::max(A.deg(), 0L), dB = std::max(B.deg(), 0L);
    m = std::max((dA + 3) / 4, (dB + 5) / 6);
    Ai = A.is_zero() ? RatPoly() : A.reverse(4 * m);
    Bi = B.is_zero() ? RatPoly() : B.reverse(6 * m);
}

SurfaceFq SurfaceFq::make(FqCtxPtr F, FqPoly a1, FqPoly a2, FqPoly a3, FqPoly a4, FqPoly a6) {
    if (F->p() == 2 || F->p() == 3)
        throw std::invalid_argument("surface: characteristic 2/3 base fields are unsupported");
    if (F->k() != 1)
        throw std::invalid_argument("surface: non-prime base fields are unsupported");
    SurfaceFq s;
    s.F = F;
    s.a1 = a1; s.a2 = a2; s.a3 = a3; s.a4 = a4; s.a6 = a6;
    s.b2 = a1 * a1 + mulint_fq(a2, 4);
    s.b4 = mulint_fq(a4, 2) + a1 * a3;
    s.b6 = a3 * a3 + mulint_fq(a6, 4);
    s.b8 = a1 * a1 * a6 + mulint_fq(a2 * a6, 4) - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    s.c4 = s.b2 * s.b2 - mulint_fq(s.b4, 24);
    s.c6 = -(s.b2 * s.b2 * s.b2) + mulint_fq(s.b2 * s.b4, 36) - mulint_fq(s.b6, 216);
    s.delta = -(s.b2 * s.b2 * s.b8) - mulint_fq(s.b4 * s.b4 * s.b4, 8)
              - mulint_fq(s.b6 * s.b6, 27) + mulint_fq(s.b2 * s.b4 * s.b6, 9);
    if (s.delta.is_zero()) throw std::invalid_argument("surface: delta = 0");
    s.A = mulint_fq(s.c4, -27);
    s.B = mulint_fq(s.c6, -54);
    return s;
}

void SurfaceFq::infinity_chart(FqPoly& Ai, FqPoly& Bi, long& m) const {
    long dA = std::max(A.deg(), 0L), dB = std::max(B.deg(), 0L);
    m = std::max((dA + 3) / 4, (dB + 5) / 6);
    auto reverse_to = [&](const FqPoly& f, long n) {
        if (f.is_zero()) return FqPoly(F);
        std::vector<FqElem> v(static_cast<size_t>(n) + 1, F->zero());
        for (long i = 0; i <= f.deg(); ++i) v[n - i] = f.coeff(i);
        return FqPoly(F, std::move(v));
    };
    Ai = reverse_to(A, 4 * m);
    Bi = reverse_to(B, 6 * m);
}

Surface surface_from_json(const nlohmann::json& j) {
    if (!j.contains("base")) throw std::invalid_argument("surface JSON: missing \"base\"");
    auto get_poly = [&](const char* key) -> nlohmann::json {
        if (!j.contains(key)) return nlohmann::json::array();
        return j.at(key);
    };
    if (j.at("base").is_string() && j.at("base").get<std::string>() == "Q") {
        return SurfaceQ::make(ratpoly_from_json(get_poly("a1")), ratpoly_from_json(get_poly("a2")),
                              ratpoly_from_json(get_poly("a3")), ratpoly_from_json(get_poly("a4")),
                              ratpoly_from_json(get_poly("a6")));
    }
    if (j.at("base").is_object() && j.at("base").contains("Fq")) {
        uint64_t q = j.at("base").at("Fq").get<uint64_t>();
        if (!is_prime(BigInt(static_cast<unsigned long>(q))))
            throw std::invalid_argument("surface JSON: base Fq must be prime");
        auto F = FqCtx::prime_field(q);
        return SurfaceFq::make(F, fqpoly_from_json(F, get_poly("a1")),
                               fqpoly_from_json(F, get_poly("a2")),
                               fqpoly_from_json(F, get_poly("a3")),
                               fqpoly_from_json(F, get_poly("a4")),
                               fqpoly_from_json(F, get_poly("a6")));
    }
    throw std::invalid_argument("surface JSON: base must be \"Q\" or {\"Fq\": q}");
}

nlohmann::json surface_to_json(const Surface& s) {
    nlohmann::json j;
    if (std::holds_alternative<SurfaceQ>(s)) {
        const auto& q = std::get<SurfaceQ>(s);
        j["base"] = "Q";
        j["a1"] = ratpoly_to_json(q.a1);
        j["a2"] = ratpoly_to_json(q.a2);
        j["a3"] = ratpoly_to_json(q.a3);
        j["a4"] = ratpoly_to_json(q.a4);
        j["a6"] = ratpoly_to_json(q.a6);
        j["delta"] = ratpoly_to_json(q.delta);
    } else {
        const auto& f = std::get<SurfaceFq>(s);
        j["base"] = {{"Fq", f.F->p()}};
        j["a1"] = fqpoly_to_json(f.a1);
        j["a2"] = fqpoly_to_json(f.a2);
        j["a3"] = fqpoly_to_json(f.a3);
        j["a4"] = fqpoly_to_json(f.a4);
        j["a6"] = fqpoly_to_json(f.a6);
        j["delta"] = fqpoly_to_json(f.delta);
    }
    return j;
}

namespace {

KodairaFiber fiber_from(const TateFiber& t, const std::string& place, long deg, bool at_inf) {
    KodairaFiber f;
    f.at_infinity = at_inf;
    f.place = place;
    f.place_degree = deg;
    f.sym = t.sym;
    f.v_delta = t.v_delta;
    f.tamagawa = t.tamagawa;
    f.split = t.split;
    f.geom_components = t.sym.geom_group();
    return f;
}

} // namespace

KodairaFiber tate_at_place_q(const SurfaceQ& s, const RatPoly& pi) {
    QLocal loc(pi.monic());
    auto t = tate_ff(s.A, s.B, loc);
    return fiber_from(t, pi.monic().str(), pi.deg(), false);
}

KodairaFiber tate_at_place_q_infinity(const SurfaceQ& s) {
    RatPoly Ai, Bi;
    long m;
    s.infinity_chart(Ai, Bi, m);
    QLocal loc(RatPoly::x()); // uniformizer s
    auto t = tate_ff(Ai, Bi, loc);
    return fiber_from(t, "infinity", 1, true);
}

KodairaFiber tate_at_place_fq(const SurfaceFq& s, const FqPoly& pi) {
    FqLocal loc(s.F, pi.monic());
    auto t = tate_ff(s.A, s.B, loc);
    return fiber_from(t, pi.monic().str(), pi.deg(), false);
}

KodairaFiber tate_at_place_fq_infinity(const SurfaceFq& s) {
    FqPoly Ai, Bi;
    long m;
    s.infinity_chart(Ai, Bi, m);
    FqLocal loc(s.F, FqPoly::x(s.F));
    auto t = tate_ff(Ai, Bi, loc);
    return fiber_from(t, "infinity", 1, true);
}

SurfaceReport analyze_surface(const Surface& s, uint64_t seed) {
    SurfaceReport rep;
    if (std::holds_alternative<SurfaceQ>(s)) {
        const auto& sq = std::get<SurfaceQ>(s);
        auto fac = factor_q(sq.delta, 1u << 20, seed);
        rep.delta_factor_complete = fac.complete;
        for (auto& [pi, mult] : fac.factors) {
            auto f = tate_at_place_q(sq, pi);
            if (!f.sym.good()) rep.fibers.push_back(std::move(f));
        }
        auto finf = tate_at_place_q_infinity(sq);
        if (!finf.sym.good()) rep.fibers.push_back(std::move(finf));
    } else {
        const auto& sf = std::get<SurfaceFq>(s);
        auto fac = factor_fq(sf.delta, seed);
        for (auto& [pi, mult] : fac.factors) {
            auto f = tate_at_place_fq(sf, pi);
            if (!f.sym.good()) rep.fibers.push_back(std::move(f));
        }
        auto finf = tate_at_place_fq_infinity(sf);
        if (!finf.sym.good()) rep.fibers.push_back(std::move(finf));
    }
    return rep;
}

long SurfaceReport::count_c_divisible(long p) const {
    long n = 0;
    for (auto& f : fibers)
        if (f.tamagawa % p == 0) ++n;
    return n;
}

long SurfaceReport::count_I2nstar_rational() const {
    long n = 0;
    for (auto& f : fibers)
        if (f.sym.is_star_even() && f.tamagawa == 4) ++n;
    return n;
}

long SurfaceReport::count_I2nstar_geometric() const {
    long n = 0;
    for (auto& f : fibers)
        if (f.sym.is_star_even()) ++n;
    return n;
}

long SurfaceReport::sum_vdelta_deg() const {
    long n = 0;
    for (auto& f : fibers) n += f.v_delta * f.place_degree;
    return n;
}

long SurfaceReport::conductor_degree() const {
    long n = 0;
    for (auto& f : fibers) n += (f.sym.multiplicative() ? 1 : 2) * f.place_degree;
    return n;
}

nlohmann::json SurfaceReport::to_json() const {
    nlohmann::json j;
    j["fibers"] = nlohmann::json::array();
    for (auto& f : fibers) {
        nlohmann::json e;
        e["place"] = f.place;
        e["degree"] = f.place_degree;
        e["kodaira"] = f.sym.str();
        e["v_delta"] = f.v_delta;
        e["tamagawa"] = f.tamagawa;
        if (f.sym.multiplicative()) e["split"] = f.split;
        e["geom_components"] = f.geom_components;
        j["fibers"].push_back(e);
    }
    j["delta_factor_complete"] = delta_factor_complete;
    j["sum_vdelta_deg"] = sum_vdelta_deg();
    j["count_2_div_c"] = count_c_divisible(2);
    j["count_I2nstar_rational"] = count_I2nstar_rational();
    j["count_I2nstar_geometric"] = count_I2nstar_geometric();
    j["conductor_degree"] = conductor_degree();
    return j;
}

long picard_rank_bound(const SurfaceReport& rep, long p, long mw_rank_lb) {
    long bound = mw_rank_lb - rep.count_c_divisible(p);
    if (p == 2) bound -= rep.count_I2nstar_rational();
    return bound;
}

long class_rank_bound(const SurfaceReport& rep, long p, long mw_rank_lb, long unit_rank_L,
                      long unit_rank_k) {
    return picard_rank_bound(rep, p, mw_rank_lb) - unit_rank_L + unit_rank_k;
}

SurfaceFq ulmer_surface(uint64_t q, unsigned n) {
    if (q < 5 || !is_prime(BigInt(static_cast<unsigned long>(q))))
        throw std::invalid_argument("ulmer_surface: q must be a prime >= 5");
    if (n < 1) throw std::invalid_argument("ulmer_surface: n >= 1");
    auto F = FqCtx::prime_field(q);
    BigInt d = zpow(BigInt(static_cast<unsigned long>(q)), n) + 1;
    if (!d.fits_ulong_p()) throw std::invalid_argument("ulmer_surface: degree too large");
    unsigned long du = d.get_ui();
    // y^2 + xy = x^3 - t^d
    std::vector<FqElem> a6c(du + 1, F->zero());
    a6c[du] = F->neg(F->one());
    FqPoly one = FqPoly::constant(F, F->one());
    return SurfaceFq::make(F, one, FqPoly(F), FqPoly(F), FqPoly(F), FqPoly(F, std::move(a6c)));
}

BigRat ulmer_rank_term(uint64_t q, unsigned n) {
    BigInt num = zpow(BigInt(static_cast<unsigned long>(q)), n) - 1;
    BigRat r(num, BigInt(2L * n));
    r.canonicalize();
    return r;
}

KodairaSymbol ulmer_infinity_type(uint64_t q, unsigned n) {
    return tate_at_place_fq_infinity(ulmer_surface(q, n)).sym;
}

} // namespace esd
