#ifndef ISOTODA_HOMOLOGY_HPP
#define ISOTODA_HOMOLOGY_HPP

#include <vector>

#include "isotoda/exact.hpp"

namespace isotoda::homology {

// numerator(t) / (1 - t^2)^denom_pow with exact integer coefficients.
struct RationalSeries {
    IntPoly numerator;
    int denom_pow = 0;

    // Coefficients of t^0 .. t^{terms-1} of the power-series expansion.
    std::vector<int128> expand(int terms) const;
};

// (sum_i h_i t^{2i}) / (1 - t^2)^{n-1}, the rational principal part shared
// by the collar series and the full-space series.
RationalSeries equivariant_series_principal(int n);

// Equivariant cohomology series of the collar neighborhood of the
// degenerate locus: principal part plus the polynomial tail
// (1+t)^n - 1 - t. Returned as expansion coefficients.
std::vector<int128> equivariant_series_collar(int n, int terms);

// For n = 3 the full isospectral space is the complete flag manifold and
// its equivariant series equals principal + 2t^2; for n >= 4 only the
// principal part plus an undetermined polynomial remainder is known. The
// known remainder, or empty if undetermined.
IntPoly full_space_remainder(int n);

struct BettiComponents {
    IntPoly h_eq;   // H^{=eps}(t)  = (1+t)^{2n-1}
    IntPoly h_geq;  // H^{>=eps}(t)
    IntPoly h_leq;  // H^{<=eps}(t)
    IntPoly h_ker;  // H^{Ker}(t), the Upsilon enumeration
};

BettiComponents betti_components(int n, int n_plus, int n_minus);

struct BettiTable {
    int n = 0;
    int n_plus = 0;
    int n_minus = 0;
    std::vector<int128> betti;  // beta_0 .. beta_{2n}
};

// Poincare polynomial of the isospectral space:
// H^{>=eps} + H^{<=eps} - H^{=eps} + (1+t) H^{Ker}.
BettiTable betti_table(int n, int n_plus, int n_minus);

// The Chebyshev-degenerate split of extrema: n_plus = floor((n-1)/2) local
// maxima, n_minus = ceil((n-1)/2) local minima. This is the parameter pair
// of the most degenerate case.
struct DegenerateSplit {
    int n_plus;
    int n_minus;
};
DegenerateSplit most_degenerate_split(int n);

// Bigraded homology of the collar: rows p = 0..n-1, columns q = 0..n.
// Zero above the diagonal, binomial products below, the h-based formula on
// the diagonal. Row/column sums reproduce H^{<=eps}.
std::vector<std::vector<int128>> collar_bigraded_betti(int n);

struct Diagnostics {
    int128 euler = 0;             // alternating sum; equals n! for every valid input
    int pi1_rank = 0;             // n - 1 - n_plus - n_minus
    int128 odd_betti_total = 0;
    bool equivariantly_formal = false;  // odd Betti numbers all vanish
    std::vector<int128> orbit_poincare; // Poincare polynomial of the orbit space
};

Diagnostics diagnostics(int n, int n_plus, int n_minus);

void validate_betti_params(int n, int n_plus, int n_minus);

} // namespace isotoda::homology

#endif
