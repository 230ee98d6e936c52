#ifndef ESD_ELLSURF_CURVE2_HPP
#define ESD_ELLSURF_CURVE2_HPP

#include "ellsurf/surface.hpp"

#include <vector>

namespace esd {

// polynomial in x with coefficients in Q[t]
using XPoly = std::vector<RatPoly>;

// p-division polynomial psi_p(x) of y^2 = x^3 + A(t) x + B(t), odd p;
// degree (p^2 - 1)/2 in x
XPoly division_polynomial(const RatPoly& A, const RatPoly& B, long p);

struct CurveModel {
    long p = 2;
    // p = 2: plane cubic in x (degree-3 map); p odd: psi_p(x) = 0 plus the
    // y-quadric (degree p^2 - 1 map)
    XPoly defining;   // polynomial in x over Q[t]
    long map_degree;
    enum Integrality { Integral, Reducible, Unverified } geom = Unverified;
};

struct ReducibleTorsion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// p = 2: the trigonal curve 4x^3 + b2 x^2 + 2 b4 x + b6 = 0 (primitive part),
// with the geometric-integrality gate. p odd: the psi_p model.
CurveModel torsion_curve(const SurfaceQ& s, long p);
CurveModel torsion_curve_fq(const SurfaceFq& s, long p);

// ramification indices (partition of 3, each index repeated by residue degree)
// of the t-map fiber of a 2-torsion curve model above a place
std::vector<long> ramification_profile_q(const CurveModel& c, const RatPoly& pi);
std::vector<long> ramification_profile_q_infinity(const CurveModel& c);
std::vector<long> ramification_profile_fq(const SurfaceFq& s, const CurveModel& c, const FqPoly& pi);
std::vector<long> ramification_profile_fq_infinity(const SurfaceFq& s, const CurveModel& c);

} // namespace esd

#endif
