#ifndef ISOTODA_SPECTRUM_HPP
#define ISOTODA_SPECTRUM_HPP

#include <complex>
#include <optional>
#include <vector>

#include "isotoda/errors.hpp"

namespace isotoda::spectrum {

using cplx = std::complex<double>;

// A simple spectrum: strictly ascending eigenvalues, n >= 3.
struct Spectrum {
    std::vector<double> lambda;

    explicit Spectrum(std::vector<double> values);
    int n() const { return static_cast<int>(lambda.size()); }
};

// Invariants read off the critical profile of F(x) = prod (x - lambda_i):
// M is the smallest local-maximum value, m the smallest |local-minimum|
// value, and n_plus / n_minus count the extrema achieving them within
// grouping_tol (relative).
struct SpectrumInvariants {
    int n = 0;
    double M = 0.0;
    double m = 0.0;
    int n_plus = 0;
    int n_minus = 0;
    double grouping_tol = 0.0;
};

inline constexpr double kDefaultGroupingTol = 1e-9;

SpectrumInvariants analyze(const Spectrum& s,
                           double grouping_tol = kDefaultGroupingTol);

// Radius of the boundary of the image set at angle theta:
//   R(theta) = (1/2) min(m / (1 + cos theta), M / (1 - cos theta)).
// Returns +inf on the axis where the active branch degenerates.
double bset_radius(const SpectrumInvariants& inv, double theta);

enum class BSetLocation { Interior, BoundaryPlus, BoundaryMinus, Corner, Outside };

struct BSetQuery {
    cplx z;
    BSetLocation location = BSetLocation::Outside;
    std::optional<int> fiber_dim;  // present iff location != Outside
};

// Classifies z against the two-parabola bound. z = 0 short-circuits to
// Interior (Arg 0 is undefined but 0 satisfies the bound for every angle).
// BoundaryPlus means the M-branch is active, BoundaryMinus the m-branch;
// Corner (branches equal within boundary_tol) takes precedence over either.
BSetQuery bset_contains(const SpectrumInvariants& inv, cplx z,
                        double boundary_tol);

enum class ManifoldVerdict { NotHomologyManifold, NoObstructionGenericSmooth };

// NotHomologyManifold iff n_plus > 1 or n_minus > 1. The other verdict
// deliberately does not claim "manifold": only the generic direction is
// known.
ManifoldVerdict manifold_status(const SpectrumInvariants& inv);

// The triple (n_minus, n_plus, k) with k = n - 1 - n_minus - n_plus
// describing the orbit space as a suspension-of-join times a torus.
struct OrbitSpaceDescriptor {
    int n_minus = 0;
    int n_plus = 0;
    int torus_rank = 0;
};

OrbitSpaceDescriptor orbit_space_descriptor(int n, const SpectrumInvariants& inv);

// True iff all local-max values of F agree within tol and all local-min
// values agree within tol, i.e. F is a Chebyshev polynomial up to affine
// changes of domain and image.
bool is_chebyshev_degenerate(const Spectrum& s, double tol);

} // namespace isotoda::spectrum

#endif
