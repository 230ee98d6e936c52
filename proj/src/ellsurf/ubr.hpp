#ifndef ESD_ELLSURF_UBR_HPP
#define ESD_ELLSURF_UBR_HPP

#include "ellsurf/surface.hpp"

namespace esd {

struct UbrVerdict {
    enum Kind { UBR, NOT_UBR, UNKNOWN } kind = UNKNOWN;
    BigInt prime;
    BigRat witness;    // specialization with good reduction (NOT_UBR)
    bool witness_at_infinity_chart = false; // witness is an s-value (t = 1/s)
    long witness_depth = 0; // p-adic level of the class where it was found
    std::string note;
};

// Universal-bad-reduction scan for an integral surface over Q(t).
// Candidate primes: p <= deg(Delta) or p | content(Delta). Per candidate the
// residue tree of both charts is explored to the given depth: witnesses are
// certified by a full local Tate run on the fiber; exhaustive-badness uses
// the mod-12 discriminant valuation argument plus closure along rational
// root chains. UNKNOWN is the honest fallback.
std::vector<UbrVerdict> ubr_primes(const SurfaceQ& s, long depth = 6,
                                   uint64_t seed = kDefaultSeed);

// certify a single claimed witness: does the fiber at t0 have good reduction
// at p? (independent single-fiber Tate run)
bool verify_good_fiber(const SurfaceQ& s, const BigRat& t0, const BigInt& p);

} // namespace esd

#endif
