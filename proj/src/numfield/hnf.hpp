#ifndef ESD_NUMFIELD_HNF_HPP
#define ESD_NUMFIELD_HNF_HPP

#include "algebra/numbers.hpp"

#include <array>
#include <vector>

namespace esd {

// Hermite normal form of the lattice spanned by integer rows (each of length 3):
// lower-triangular 3x3, positive diagonal, off-diagonal entries reduced modulo
// the diagonal below them. Throws if the rows do not span a rank-3 lattice.
inline std::array<std::array<BigInt, 3>, 3> hnf3(std::vector<std::array<BigInt, 3>> rows) {
    std::array<std::array<BigInt, 3>, 3> out;
    for (auto& r : out) r = {BigInt(0), BigInt(0), BigInt(0)};
    // eliminate columns right to left
    for (int c = 2; c >= 0; --c) {
        // gcd all rows with nonzero entry in column c into one pivot row
        int piv = -1;
        for (;;) {
            piv = -1;
            int second = -1;
            for (size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][c] != 0) {
                    if (piv < 0) piv = static_cast<int>(i);
                    else { second = static_cast<int>(i); break; }
                }
            }
            if (second < 0) break;
            // reduce row 'second' by row 'piv' (or swap for smaller pivot)
            if (abs(rows[piv][c]) > abs(rows[second][c])) std::swap(rows[piv], rows[second]);
            BigInt q = zfdiv(rows[second][c], rows[piv][c]);
            for (int j = 0; j < 3; ++j) rows[second][j] -= q * rows[piv][j];
        }
        if (piv < 0) throw std::domain_error("hnf3: rank deficient");
        if (rows[piv][c] < 0)
            for (int j = 0; j < 3; ++j) rows[piv][j] = -rows[piv][j];
        out[c] = rows[piv];
        rows.erase(rows.begin() + piv);
    }
    // reduce off-diagonal entries: row i, column j < i: 0 <= out[i][j] < out[j][j]
    for (int i = 1; i < 3; ++i)
        for (int j = i - 1; j >= 0; --j) {
            BigInt q = zfdiv(out[i][j], out[j][j]);
            if (q != 0)
                for (int k = 0; k < 3; ++k) out[i][k] -= q * out[j][k];
        }
    return out;
}

inline BigInt det3(const std::array<std::array<BigInt, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Smith normal form of a small integer matrix (in place work on a copy);
// returns the invariant factors d1 | d2 | ... (nonzero ones only).
std::vector<BigInt> smith_normal_form(std::vector<std::vector<BigInt>> m);

} // namespace esd

#endif
