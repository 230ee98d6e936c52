#ifndef ESD_HEIGHTS_HEIGHT_HPP
#define ESD_HEIGHTS_HEIGHT_HPP

#include "common/util.hpp"
#include "heights/ecq.hpp"
#include "heights/interval.hpp"

#include <vector>

namespace esd {

struct HeightOptions {
    double eps = 1e-12;              // target interval width
    uint64_t factor_budget = 2'000'000;
    uint64_t seed = kDefaultSeed;
};

struct HeightResult {
    RI value;
    bool flagged = false;            // discriminant factorization incomplete
    std::vector<BigInt> unknown;     // unfactored cofactors of the discriminant
};

// Canonical height in the normalization \hat h(P) = lim 4^{-n} h(x(2^n P)).
// Rigorous: the escort multiple kills every non-archimedean correction and the
// archimedean series carries an explicit tail bound; the result interval
// always contains the exact value.
HeightResult canonical_height(const CurveQ& E, const PointQ& P, const HeightOptions& opt = {});

struct GramCertificate {
    std::vector<std::vector<RI>> gram; // full pairing matrix of the input points
    std::vector<size_t> selected;      // greedy independent subset (input indices)
    RI det;                            // determinant interval of the selected minor
    long certified_rank = 0;
    bool flagged = false;
};

GramCertificate rank_certificate(const CurveQ& E, const std::vector<PointQ>& pts,
                                 const HeightOptions& opt = {});

} // namespace esd

#endif
