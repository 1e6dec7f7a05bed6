#ifndef ISOTODA_SCHRODINGER_HPP
#define ISOTODA_SCHRODINGER_HPP

#include <array>
#include <complex>
#include <vector>

#include "isotoda/matrix.hpp"
#include "isotoda/poly.hpp"

namespace isotoda::schrodinger {

using matrix::cplx;
using matrix::PeriodicJacobi;

// All operations here take a gauged matrix: every b_i real positive (the
// base of a GaugeForm). A zero or complex b_i raises degenerate_locus_error
// / validation_error.

// The one-step transfer matrix M_i sending (psi_{i-1}, psi_i) to
// (psi_i, psi_{i+1}) of the recurrence b_{i-1} psi_{i-1} + a_i psi_i +
// b_i psi_{i+1} = x psi_i, with cyclic b_0 = b_n. Row-major 2x2;
// determinant b_{i-1}/b_i. Index i is 1-based as in the recurrence.
std::array<double, 4> transfer_matrix(const PeriodicJacobi& L, int i, double x);

struct Monodromy {
    std::array<cplx, 4> entries;  // row-major M(x) = M_n M_{n-1} ... M_1
    double det = 0.0;             // determinant, carried through extended precision
    double trace = 0.0;
};

// The period map of the recurrence. The 2x2 product is accumulated in
// extended precision: inside forbidden zones the entries grow exponentially
// while det stays exactly 1, so double products would lose the determinant
// to cancellation.
Monodromy monodromy(const PeriodicJacobi& L, double x);

// P(x) = B * tr M(x), recovered by interpolation at n+1 Chebyshev nodes on
// the Gershgorin hull. Monic within 1e-8 relative or numeric_error.
poly::RealPolynomial spectral_polynomial(const PeriodicJacobi& L);

struct Zone {
    double lo = 0.0;
    double hi = 0.0;
    bool collapsed = false;
    bool upper = false;  // endpoints on P - 2B (around a local max); else lower
};

struct ForbiddenZones {
    std::vector<double> roots;  // merged 2n roots of P -+ 2B, ascending
    std::vector<Zone> zones;    // the n-1 intervals [x_{2k}, x_{2k+1}]
};

inline constexpr double kDefaultZoneTol = 1e-7;

ForbiddenZones forbidden_zones(const PeriodicJacobi& L,
                               double tol = kDefaultZoneTol);

// Zone extraction from a (P, B) pair directly; used by forbidden_zones and
// by tests that tune B against a known spectrum without building a matrix.
ForbiddenZones zones_from_polynomial(const poly::RealPolynomial& P, double B,
                                     double tol = kDefaultZoneTol);

} // namespace isotoda::schrodinger

#endif
