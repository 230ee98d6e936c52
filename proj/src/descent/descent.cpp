#include "descent/descent.hpp"
#include "ellsurf/tate_q.hpp"
#include "algebra/poly_json.hpp"
#include "algebra/zfactor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace esd {

RatFunc RatFunc::of(RatPoly n, RatPoly d) {
    if (d.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    RatPoly g = gcd(n, d);
    if (g.deg() > 0) {
        n = n.divexact(g);
        d = d.divexact(g);
    }
    BigRat lc = d.lc();
    n = n * (BigRat(1) / lc);
    d = d * (BigRat(1) / lc);
    return RatFunc{std::move(n), std::move(d)};
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return of(num * o.den + o.num * den, den * o.den);
}
RatFunc RatFunc::operator-(const RatFunc& o) const {
    return of(num * o.den - o.num * den, den * o.den);
}
RatFunc RatFunc::operator*(const RatFunc& o) const { return of(num * o.num, den * o.den); }
RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw std::domain_error("RatFunc: division by zero");
    return of(num * o.den, den * o.num);
}
RatFunc RatFunc::operator-() const { return RatFunc{-num, den}; }
bool RatFunc::operator==(const RatFunc& o) const {
    return (num * o.den - o.num * den).is_zero();
}
BigRat RatFunc::eval(const BigRat& t) const {
    BigRat d = den.eval(t);
    if (d == 0) throw std::domain_error("RatFunc::eval: pole");
    return num.eval(t) / d;
}

bool qt_on_curve(const SurfaceQ& s, const PointQt& P) {
    if (P.infinity) return true;
    RatFunc A = RatFunc::poly(s.A), B = RatFunc::poly(s.B);
    RatFunc lhs = P.y * P.y;
    RatFunc rhs = P.x * P.x * P.x + A * P.x + B;
    return lhs == rhs;
}

PointQt qt_neg(const PointQt& P) {
    if (P.infinity) return P;
    return PointQt::of(P.x, -P.y);
}

bool qt_is_two_torsion(const PointQt& P) { return !P.infinity && P.y.is_zero(); }

PointQt qt_add(const SurfaceQ& s, const PointQt& P, const PointQt& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    RatFunc A = RatFunc::poly(s.A);
    RatFunc lam;
    if (P.x == Q.x) {
        if ((P.y + Q.y).is_zero()) return PointQt::O();
        // doubling
        RatFunc three{RatPoly(BigRat(3)), RatPoly(BigRat(1))};
        RatFunc two{RatPoly(BigRat(2)), RatPoly(BigRat(1))};
        lam = (three * P.x * P.x + A) / (two * P.y);
    } else {
        lam = (Q.y - P.y) / (Q.x - P.x);
    }
    RatFunc x3 = lam * lam - P.x - Q.x;
    RatFunc y3 = lam * (P.x - x3) - P.y;
    return PointQt::of(x3, y3);
}

PointQt qt_mul(const SurfaceQ& s, const PointQt& P, long n) {
    if (n == 0) return PointQt::O();
    PointQt base = n < 0 ? qt_neg(P) : P;
    unsigned long k = n < 0 ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
    PointQt acc = PointQt::O();
    PointQt pw = base;
    while (k) {
        if (k & 1) acc = qt_add(s, acc, pw);
        k >>= 1;
        if (k) pw = qt_add(s, pw, pw);
    }
    return acc;
}

namespace {

RatFunc ratfunc_from_json(const nlohmann::json& j) {
    if (j.is_array()) return RatFunc::poly(ratpoly_from_json(j));
    if (j.is_object() && j.contains("num") && j.contains("den"))
        return RatFunc::of(ratpoly_from_json(j.at("num")), ratpoly_from_json(j.at("den")));
    throw std::invalid_argument("point coordinate must be a polynomial array or {num, den}");
}

nlohmann::json ratfunc_to_json(const RatFunc& f) {
    if (f.den.deg() == 0 && f.den.coeff(0) == 1) return ratpoly_to_json(f.num);
    nlohmann::json j;
    j["num"] = ratpoly_to_json(f.num);
    j["den"] = ratpoly_to_json(f.den);
    return j;
}

} // namespace

std::vector<PointQt> points_from_json(const SurfaceQ& s, const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("points JSON must be an array");
    std::vector<PointQt> out;
    for (const auto& e : j) {
        RatFunc x, y;
        if (e.is_array() && e.size() == 2) {
            x = ratfunc_from_json(e[0]);
            y = ratfunc_from_json(e[1]);
        } else if (e.is_object() && e.contains("x") && e.contains("y")) {
            x = ratfunc_from_json(e.at("x"));
            y = ratfunc_from_json(e.at("y"));
        } else {
            throw std::invalid_argument("point must be [x, y]");
        }
        // coordinates are given on the surface's stated model; move to the
        // short model X = 36x + 3b2, Y = 216(y + (a1 x + a3)/2)
        bool already_short = s.a1.is_zero() && s.a2.is_zero() && s.a3.is_zero();
        PointQt P;
        if (already_short && s.a4 == s.A && s.a6 == s.B) {
            P = PointQt::of(x, y);
        } else {
            RatFunc b2 = RatFunc::poly(s.b2), a1 = RatFunc::poly(s.a1), a3 = RatFunc::poly(s.a3);
            RatFunc half{RatPoly(BigRat(1, 2)), RatPoly(BigRat(1))};
            RatFunc X = x * RatFunc::poly(RatPoly(BigRat(36))) + b2 * RatFunc::poly(RatPoly(BigRat(3)));
            RatFunc Y = (y + (a1 * x + a3) * half) * RatFunc::poly(RatPoly(BigRat(216)));
            P = PointQt::of(X, Y);
        }
        if (!qt_on_curve(s, P))
            throw std::invalid_argument("point does not satisfy the Weierstrass equation");
        out.push_back(P);
    }
    return out;
}

nlohmann::json points_to_json(const std::vector<PointQt>& pts) {
    nlohmann::json j = nlohmann::json::array();
    for (auto& P : pts) {
        nlohmann::json e = nlohmann::json::array();
        e.push_back(ratfunc_to_json(P.x));
        e.push_back(ratfunc_to_json(P.y));
        j.push_back(e);
    }
    return j;
}

std::vector<DescentClass> descent_classes(const SurfaceQ& s, const std::vector<PointQt>& pts) {
    std::vector<DescentClass> out;
    for (auto& P : pts) {
        if (P.infinity) continue; // trivial class, excluded
        if (qt_is_two_torsion(P))
            throw std::invalid_argument("descent_classes: 2-torsion input point");
        DescentClass c;
        c.P = P;
        for (auto& Q : pts) {
            if (Q.infinity) continue;
            PointQt twoQ = qt_add(s, Q, Q);
            if (!twoQ.infinity && twoQ.x == P.x && twoQ.y == P.y) c.trivial_double = true;
        }
        out.push_back(std::move(c));
    }
    return out;
}

const char* Rejection::name(Reason r) {
    switch (r) {
        case SingularFiber: return "singular_fiber";
        case ReducibleFiber: return "reducible_fiber";
        case FactorUnknown: return "factoring_unknown";
        case OddValuation: return "odd_valuation";
        case UnitSearchFailed: return "unit_search_failed";
        case DependentSubset: return "dependent_subset";
        case WitnessNotFound: return "witness_not_found";
    }
    return "?";
}

nlohmann::json SpecializationPlan::to_json() const {
    nlohmann::json j;
    j["t0"] = zstr(t0);
    j["modulus"] = zstr(modulus);
    j["T"] = nlohmann::json::array();
    for (auto& e : T) {
        nlohmann::json x;
        x["p"] = zstr(e.p);
        x["witness"] = zstr(e.witness);
        x["exponent"] = e.exponent;
        j["T"].push_back(x);
    }
    return j;
}

SpecializationPlan choose_plan(const SurfaceQ& s, const std::vector<UbrVerdict>& ubr,
                               const BigInt& t0_hint, long M) {
    SpecializationPlan plan;
    for (auto& v : ubr) {
        if (v.kind == UbrVerdict::UBR || v.kind == UbrVerdict::UNKNOWN)
            throw UniversalBadReduction(v.prime);
    }
    for (auto& v : ubr) {
        // does the generic integer specialization need a congruence at p?
        // test small residues; if some residue class with Delta != 0 mod p is
        // good, the prime imposes no condition
        const BigInt& p = v.prime;
        bool generic_good = false;
        for (BigInt r = 0; r < p && r < 64; r += 1) {
            BigRat t0(r);
            if (s.delta.eval(t0) == 0) continue;
            if (qval(BigRat(s.delta.eval(t0)), p) != 0) continue; // not generic at p
            if (tate_q({s.a1.eval(t0), s.a2.eval(t0), s.a3.eval(t0), s.a4.eval(t0),
                        s.a6.eval(t0)}, p).good()) {
                generic_good = true;
                break;
            }
        }
        if (generic_good) continue;
        if (v.witness_at_infinity_chart)
            throw UniversalBadReduction(p); // only an infinity-chart witness: no
                                            // integer progression reaches it
        // congruence t = witness (mod p^e), fine enough to pin the witness class
        BigInt w = v.witness.get_num();
        long e = std::max(M, v.witness_depth);
        plan.T.push_back({p, w, e});
    }
    // CRT combine
    BigInt mod = 1, t0 = 0;
    for (auto& e : plan.T) {
        BigInt pe = zpow(e.p, e.exponent);
        // solve t = t0 mod mod, t = witness mod pe
        BigInt g = zgcd(mod, pe);
        if (g != 1) throw std::logic_error("choose_plan: CRT moduli not coprime");
        BigInt inv;
        mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), pe.get_mpz_t());
        BigInt k = zmod((e.witness - t0) * inv, pe);
        t0 = t0 + mod * k;
        mod = mod * pe;
    }
    plan.modulus = mod;
    // shift the center near the hint
    if (mod > 1) {
        BigInt k = zfdiv(t0_hint - t0 + mod / 2, mod);
        plan.t0 = t0 + k * mod;
    } else {
        plan.t0 = t0_hint;
    }
    return plan;
}

namespace {

struct PointFiberData {
    BigInt P, Q;        // xtilde = P/Q in lowest terms, Q > 0
    NFElem num;         // P - Q theta
    NFElem delta;       // (P - Q theta)/Q
    FracIdeal sqrt_ideal;
    bool trivial = false;
};

nlohmann::json ideal_to_json(const FracIdeal& I) {
    nlohmann::json j;
    j["den"] = zstr(I.den);
    j["m"] = nlohmann::json::array();
    for (auto& row : I.m) {
        nlohmann::json r = nlohmann::json::array();
        for (auto& c : row) r.push_back(zstr(c));
        j["m"].push_back(r);
    }
    return j;
}

FracIdeal ideal_from_json(const nlohmann::json& j) {
    FracIdeal I;
    I.den = BigInt(j.at("den").get<std::string>());
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            I.m[i][k] = BigInt(j.at("m")[i][k].get<std::string>());
    return I;
}

nlohmann::json witness_to_json(const SquareWitness& w) {
    nlohmann::json j;
    if (w.kind == SquareWitness::RealEmbedding) {
        j["kind"] = "real_embedding";
        j["index"] = w.real_index;
    } else {
        j["kind"] = "residue_prime";
        j["q"] = zstr(w.q);
        nlohmann::json fac = nlohmann::json::array();
        for (auto& c : w.qfactor) fac.push_back(zstr(c));
        j["factor"] = fac;
    }
    return j;
}

SquareWitness witness_from_json(const nlohmann::json& j) {
    SquareWitness w;
    if (j.at("kind") == "real_embedding") {
        w.kind = SquareWitness::RealEmbedding;
        w.real_index = j.at("index").get<int>();
    } else {
        w.kind = SquareWitness::ResiduePrime;
        w.q = BigInt(j.at("q").get<std::string>());
        for (auto& c : j.at("factor")) w.qfactor.emplace_back(c.get<std::string>().c_str());
    }
    return w;
}

// find an irreducibility witness prime: f mod p irreducible
std::optional<BigInt> irreducibility_witness(const RatPoly& f) {
    for (uint64_t p : primes_up_to(20000)) {
        if (zmod(f.lc().get_num(), BigInt((unsigned long)p)) == 0) continue;
        auto Fp = FqCtx::prime_field(p);
        try {
            FqPoly fbar = FqPoly::from_ratpoly(Fp, f);
            if (fbar.deg() == f.deg() && fq_is_irreducible(fbar))
                return BigInt(static_cast<unsigned long>(p));
        } catch (...) {
            continue;
        }
    }
    return std::nullopt;
}

} // namespace

CertifyResult certify(const SurfaceQ& s, const std::vector<PointQt>& pts, const BigInt& t,
                      const CertifyOptions& opt) {
    // specialized short model
    BigRat A0 = s.A.eval(BigRat(t)), B0 = s.B.eval(BigRat(t));
    BigRat disc = BigRat(-4) * A0 * A0 * A0 - BigRat(27) * B0 * B0;
    if (disc == 0) return Rejection{Rejection::SingularFiber, "delta(t) = 0"};

    // integral scaling: lambda with lambda^4 A0, lambda^6 B0 integers
    BigInt lam = 1;
    {
        BigInt dA = A0.get_den(), dB = B0.get_den();
        auto fa = factor_int(dA * dB, opt.factor_budget, opt.seed);
        if (!fa.complete) return Rejection{Rejection::FactorUnknown, "denominator of the fiber"};
        for (auto& [p, e] : fa.factors) {
            long va = zval(A0.get_den(), p), vb = zval(B0.get_den(), p);
            long need = std::max((va + 3) / 4, (vb + 5) / 6);
            lam *= zpow(p, need);
        }
    }
    BigRat fA = A0 * BigRat(zpow(lam, 4)), fB = B0 * BigRat(zpow(lam, 6));
    RatPoly f({fB, fA, BigRat(0), BigRat(1)});
    {
        auto fac = factor_q(f, 1u << 20, opt.seed);
        if (!fac.complete) return Rejection{Rejection::FactorUnknown, "field polynomial"};
        if (fac.factors.size() != 1 || fac.factors[0].second != 1)
            return Rejection{Rejection::ReducibleFiber, "specialized cubic is reducible"};
    }

    // fiber data per point
    std::vector<PointFiberData> pd;
    std::map<BigInt, bool> sprimes; // relevant primes
    sprimes[BigInt(2)] = true;
    {
        auto fl = factor_int(lam, opt.factor_budget, opt.seed);
        for (auto& [p, e] : fl.factors) sprimes[p] = true;
    }
    auto classes = descent_classes(s, pts);
    for (auto& c : classes) {
        PointFiberData d;
        d.trivial = c.trivial_double;
        BigRat xt;
        try {
            xt = c.P.x.eval(BigRat(t));
        } catch (const std::domain_error&) {
            return Rejection{Rejection::DependentSubset, "a point specializes to the origin"};
        }
        BigRat xs = xt * BigRat(lam * lam);
        d.P = xs.get_num();
        d.Q = xs.get_den();
        d.num = RatPoly({BigRat(d.P), BigRat(-d.Q)});
        d.delta = RatPoly({BigRat(d.P, d.Q), BigRat(-1)});
        // N(num) = Q^3 f(P/Q)
        BigRat nn = BigRat(d.Q * d.Q * d.Q) * f.eval(xs);
        BigInt nz = nn.get_num();
        if (nz == 0) return Rejection{Rejection::SingularFiber, "2-torsion specialization"};
        auto fn = factor_int(abs(nz), opt.factor_budget, opt.seed);
        auto fq2 = factor_int(d.Q, opt.factor_budget, opt.seed);
        if (!fn.complete || !fq2.complete)
            return Rejection{Rejection::FactorUnknown, "norm factorization"};
        for (auto& [p, e] : fn.factors) sprimes[p] = true;
        for (auto& [p, e] : fq2.factors) sprimes[p] = true;
        pd.push_back(std::move(d));
    }

    std::vector<BigInt> S;
    for (auto& [p, b] : sprimes) S.push_back(p);
    CubicField K = build_field_at(f, S);

    // valuations and square roots of the ideals
    std::map<std::string, std::vector<PrimeIdeal>> primes_of;
    std::vector<std::vector<std::tuple<size_t, size_t, long>>> vals(pd.size());
    std::vector<std::vector<PrimeIdeal>> all_primes;
    for (auto& p : S) all_primes.push_back(factor_prime(K, p));
    for (size_t i = 0; i < pd.size(); ++i) {
        if (pd[i].trivial) continue;
        FracIdeal I = ideal_one(K);
        for (size_t a = 0; a < S.size(); ++a) {
            long vQ = zval(pd[i].Q, S[a]);
            for (size_t b = 0; b < all_primes[a].size(); ++b) {
                const auto& Pi = all_primes[a][b];
                long v = elem_val(K, pd[i].num, Pi) - Pi.e * vQ;
                if (v == 0) continue;
                if (v % 2 != 0)
                    return Rejection{Rejection::OddValuation,
                                     "odd valuation above " + zstr(S[a]) + " for point " +
                                         std::to_string(i)};
                vals[i].emplace_back(a, b, v);
                I = ideal_mul(K, I, ideal_pow(K, Pi.I, v / 2));
            }
        }
        pd[i].sqrt_ideal = I;
        // re-verify I^2 = (delta)
        FracIdeal lhs = ideal_mul(K, I, I);
        FracIdeal rhs = ideal_principal(K, pd[i].delta);
        if (!(lhs == rhs)) throw std::logic_error("certify: ideal square mismatch");
    }

    // units with parametric hints
    UnitBasis U;
    {
        std::vector<NFElem> hints;
        for (long c = -40; c <= 40; ++c) {
            // theta/lam^2 - c form: integral when lam = 1; try both scalings
            NFElem cand = RatPoly({BigRat(c) * BigRat(lam * lam), BigRat(-1)});
            hints.push_back(cand);
        }
        for (auto& hp : opt.unit_hint_polys) {
            BigRat cval = hp.eval(BigRat(t));
            hints.push_back(RatPoly({cval * BigRat(lam * lam), BigRat(-1)}));
            hints.push_back(RatPoly({-cval * BigRat(lam * lam), BigRat(1)}));
        }
        try {
            U = units_odd_index(K, hints, opt.unit_coord_bound);
        } catch (const UnitSearchError& e) {
            return Rejection{Rejection::UnitSearchFailed, e.what()};
        }
    }
    auto twists = unit_square_classes(K, U);

    // subset independence with witnesses
    std::vector<size_t> live;
    for (size_t i = 0; i < pd.size(); ++i)
        if (!pd[i].trivial) live.push_back(i);
    long r = static_cast<long>(live.size());
    nlohmann::json subsets = nlohmann::json::array();
    for (long mask = 1; mask < (1L << r); ++mask) {
        NFElem prod(BigRat(1));
        for (long b = 0; b < r; ++b)
            if (mask & (1L << b)) prod = K.mul(prod, pd[live[b]].delta);
        nlohmann::json entry;
        entry["mask"] = mask;
        entry["witnesses"] = nlohmann::json::array();
        for (size_t u = 0; u < twists.size(); ++u) {
            NFElem val = K.mul(twists[u], prod);
            if (nf_sqrt(K, val))
                return Rejection{Rejection::DependentSubset,
                                 "subset mask " + std::to_string(mask) + " twist " +
                                     std::to_string(u)};
            auto w = nonsquare_witness(K, val);
            if (!w)
                return Rejection{Rejection::WitnessNotFound,
                                 "mask " + std::to_string(mask) + " twist " + std::to_string(u)};
            nlohmann::json we;
            we["twist"] = u;
            we["witness"] = witness_to_json(*w);
            entry["witnesses"].push_back(we);
        }
        subsets.push_back(entry);
    }

    // saturation witnesses for the units themselves
    nlohmann::json unit_block;
    {
        unit_block["fund"] = nlohmann::json::array();
        for (auto& e : U.fund) unit_block["fund"].push_back(ratpoly_to_json(e));
        unit_block["saturation"] = nlohmann::json::array();
        long ru = static_cast<long>(U.fund.size());
        for (long mask = 1; mask < (1L << ru); ++mask)
            for (int sgn = 0; sgn < 2; ++sgn) {
                NFElem prod(BigRat(sgn ? -1 : 1));
                for (long b = 0; b < ru; ++b)
                    if (mask & (1L << b)) prod = K.mul(prod, U.fund[b]);
                auto w = nonsquare_witness(K, prod);
                if (!w) return Rejection{Rejection::WitnessNotFound, "unit saturation"};
                nlohmann::json we;
                we["mask"] = mask;
                we["sign"] = sgn ? -1 : 1;
                we["witness"] = witness_to_json(*w);
                unit_block["saturation"].push_back(we);
            }
        // -1 non-square witness
        auto wm = nonsquare_witness(K, RatPoly(BigRat(-1)));
        if (!wm) return Rejection{Rejection::WitnessNotFound, "-1"};
        unit_block["minus_one"] = witness_to_json(*wm);
    }

    // assemble certificate
    Cl2Certificate cert;
    cert.t = t;
    cert.field_poly = f;
    cert.r1 = K.r1;
    cert.r2 = K.r2;
    cert.bound = r;
    nlohmann::json j;
    j["t"] = zstr(t);
    j["lambda"] = zstr(lam);
    j["field"] = ratpoly_to_json(f);
    j["disc_f"] = zstr(K.disc_f);
    j["signature"] = {K.r1, K.r2};
    {
        auto w = irreducibility_witness(f);
        if (w) j["irreducible_mod"] = zstr(*w);
    }
    j["basis_den"] = zstr(K.basis.den);
    j["basis"] = nlohmann::json::array();
    for (auto& row : K.basis.m) {
        nlohmann::json rr = nlohmann::json::array();
        for (auto& c : row) rr.push_back(zstr(c));
        j["basis"].push_back(rr);
    }
    j["points"] = nlohmann::json::array();
    for (size_t i = 0; i < pd.size(); ++i) {
        nlohmann::json e;
        e["x_num"] = zstr(pd[i].P);
        e["x_den"] = zstr(pd[i].Q);
        e["trivial"] = pd[i].trivial;
        if (!pd[i].trivial) e["sqrt_ideal"] = ideal_to_json(pd[i].sqrt_ideal);
        j["points"].push_back(e);
    }
    j["units"] = unit_block;
    j["subsets"] = subsets;
    j["bound"] = r;
    j["version"] = kVersion;
    cert.data = j;
    return cert;
}

bool verify_certificate(const nlohmann::json& j, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    try {
        RatPoly f = ratpoly_from_json(j.at("field"));
        if (f.deg() != 3 || !f.is_integral() || f.lc() != 1) return fail("field poly not monic integer cubic");
        // irreducibility via the stored witness prime
        if (j.contains("irreducible_mod")) {
            BigInt p(j.at("irreducible_mod").get<std::string>());
            auto Fp = FqCtx::prime_field(p.get_ui());
            FqPoly fbar = FqPoly::from_ratpoly(Fp, f);
            if (fbar.deg() != 3 || !fq_is_irreducible(fbar))
                return fail("irreducibility witness fails");
        } else if (!q_is_irreducible(f)) {
            return fail("field poly reducible");
        }
        CubicField K;
        K.f = f;
        K.disc_f = discriminant(f).get_num();
        K.basis.den = BigInt(j.at("basis_den").get<std::string>());
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                K.basis.m[i][k] = BigInt(j.at("basis")[i][k].get<std::string>());
        // basis sanity: contains 1, closed under multiplication, integral disc
        {
            bool has_one = false;
            // 1 must be in the lattice: coords (1,0,0)
            std::array<BigRat, 3> one = {BigRat(1), BigRat(0), BigRat(0)};
            std::array<BigRat, 3> x;
            bool ok = true;
            for (int i = 2; i >= 0; --i) {
                BigRat acc = one[i] * BigRat(K.basis.den);
                for (int k2 = i + 1; k2 < 3; ++k2) acc -= x[k2] * BigRat(K.basis.m[k2][i]);
                x[i] = acc / BigRat(K.basis.m[i][i]);
            }
            for (auto& c : x) ok &= c.get_den() == 1;
            has_one = ok;
            if (!has_one) return fail("basis does not contain 1");
            for (int a = 0; a < 3; ++a)
                for (int b = a; b < 3; ++b) {
                    NFElem prod = K.mul(K.w(a), K.w(b));
                    if (!K.is_integral(prod)) return fail("basis not multiplicatively closed");
                }
        }
        {
            // disc consistency: disc(order) * 1 = disc(f) / index^2 for integer index
            std::array<std::array<BigRat, 3>, 3> T;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) T[a][b] = K.trace(K.mul(K.w(a), K.w(b)));
            BigRat det = T[0][0] * (T[1][1] * T[2][2] - T[1][2] * T[2][1]) -
                         T[0][1] * (T[1][0] * T[2][2] - T[1][2] * T[2][0]) +
                         T[0][2] * (T[1][0] * T[2][1] - T[1][1] * T[2][0]);
            if (det.get_den() != 1) return fail("order discriminant not integral");
            K.dK = det.get_num();
            BigInt idx2 = zdivexact(K.disc_f, K.dK);
            BigInt idx;
            if (!zis_square(idx2, &idx)) return fail("index not square");
            K.index = idx;
        }
        // signature
        {
            auto sig = j.at("signature");
            K.r1 = sig[0].get<int>();
            K.r2 = sig[1].get<int>();
            if (K.r1 + 2 * K.r2 != 3) return fail("bad signature");
            if ((K.dK < 0) != (K.r1 == 1)) return fail("signature inconsistent with disc sign");
        }
        // units: integral, |N| = 1, full rank, saturation witnesses
        std::vector<NFElem> fund;
        for (auto& e : j.at("units").at("fund")) fund.push_back(ratpoly_from_json(e));
        if (static_cast<int>(fund.size()) != K.r1 + K.r2 - 1) return fail("unit rank mismatch");
        for (auto& u : fund) {
            if (!K.is_integral(u)) return fail("unit not integral");
            BigRat n = K.norm(u);
            if (n != 1 && n != -1) return fail("unit norm");
        }
        if (fund.size() == 2) {
            auto A0 = K.abs_embeddings(fund[0], 256);
            auto A1 = K.abs_embeddings(fund[1], 256);
            RI d = A0[0].log() * A1[1].log() - A0[1].log() * A1[0].log();
            if (d.contains_zero()) return fail("units possibly dependent");
        } else if (fund.size() == 1) {
            auto A0 = K.abs_embeddings(fund[0], 256);
            if (A0[0].log().contains_zero()) return fail("unit possibly torsion");
        }
        for (auto& we : j.at("units").at("saturation")) {
            long mask = we.at("mask").get<long>();
            int sgn = we.at("sign").get<int>();
            NFElem prod{BigRat(sgn)};
            for (size_t b = 0; b < fund.size(); ++b)
                if (mask & (1L << b)) prod = K.mul(prod, fund[b]);
            if (!verify_nonsquare_witness(K, prod, witness_from_json(we.at("witness"))))
                return fail("unit saturation witness fails");
        }
        if (!verify_nonsquare_witness(K, RatPoly(BigRat(-1)),
                                      witness_from_json(j.at("units").at("minus_one"))))
            return fail("-1 witness fails");
        // points: sqrt ideals square to (delta)
        std::vector<NFElem> deltas;
        for (auto& e : j.at("points")) {
            if (e.at("trivial").get<bool>()) continue;
            BigInt P(e.at("x_num").get<std::string>());
            BigInt Q(e.at("x_den").get<std::string>());
            NFElem delta = RatPoly({BigRat(P, Q), BigRat(-1)});
            FracIdeal I = ideal_from_json(e.at("sqrt_ideal"));
            FracIdeal lhs = ideal_mul(K, I, I);
            FracIdeal rhs = ideal_principal(K, delta);
            if (!(lhs == rhs)) return fail("sqrt ideal identity fails");
            deltas.push_back(delta);
        }
        long r = static_cast<long>(deltas.size());
        if (j.at("bound").get<long>() != r) return fail("bound mismatch");
        // subsets: all twists certified non-square
        auto twists_of = [&](long u) {
            // twist list ordering: unit_square_classes = subsets of fund with signs
            std::vector<NFElem> out = {NFElem(BigRat(1))};
            for (auto& e2 : fund) {
                std::vector<NFElem> next;
                for (auto& x : out) {
                    next.push_back(x);
                    next.push_back(K.mul(x, e2));
                }
                out = next;
            }
            std::vector<NFElem> ws;
            for (auto& x : out) {
                ws.push_back(x);
                ws.push_back(-x);
            }
            return ws[u];
        };
        size_t expected_twists = (1u << fund.size()) * 2;
        for (auto& entry : j.at("subsets")) {
            long mask = entry.at("mask").get<long>();
            if (mask < 1 || mask >= (1L << r)) return fail("bad subset mask");
            NFElem prod(BigRat(1));
            for (long b = 0; b < r; ++b)
                if (mask & (1L << b)) prod = K.mul(prod, deltas[b]);
            if (entry.at("witnesses").size() != expected_twists)
                return fail("missing twist witnesses");
            for (auto& we : entry.at("witnesses")) {
                long u = we.at("twist").get<long>();
                NFElem val = K.mul(twists_of(u), prod);
                if (!verify_nonsquare_witness(K, val, witness_from_json(we.at("witness"))))
                    return fail("subset witness fails (mask " + std::to_string(mask) + ")");
            }
        }
        // every nonempty subset must be present
        if (static_cast<long>(j.at("subsets").size()) != (1L << r) - 1)
            return fail("subset table incomplete");
        return true;
    } catch (const std::exception& e) {
        return fail(std::string("exception: ") + e.what());
    }
}

} // namespace esd
