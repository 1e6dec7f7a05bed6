#include "isotoda/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isotoda/poly.hpp"

namespace isotoda::spectrum {

Spectrum::Spectrum(std::vector<double> values) : lambda(std::move(values)) {
    if (lambda.size() < 3)
        throw validation_error("spectrum must have at least 3 eigenvalues");
    for (size_t i = 0; i + 1 < lambda.size(); ++i)
        if (!(lambda[i] < lambda[i + 1]))
            throw validation_error("spectrum must be strictly increasing");
}

SpectrumInvariants analyze(const Spectrum& s, double grouping_tol) {
    if (!(grouping_tol > 0))
        throw validation_error("analyze: grouping_tol must be positive");

    const auto F = poly::from_roots(s.lambda);
    const auto prof = poly::critical_profile(F);

    double M = std::numeric_limits<double>::infinity();
    double m = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < prof.points.size(); ++i) {
        if (prof.kinds[i] == poly::ExtremumKind::Maximum) {
            if (!(prof.values[i] > 0))
                throw numeric_error("analyze: non-positive local maximum value");
            M = std::min(M, prof.values[i]);
        } else {
            if (!(prof.values[i] < 0))
                throw numeric_error("analyze: non-negative local minimum value");
            m = std::min(m, -prof.values[i]);
        }
    }

    SpectrumInvariants inv;
    inv.n = s.n();
    inv.M = M;
    inv.m = m;
    inv.grouping_tol = grouping_tol;
    for (size_t i = 0; i < prof.points.size(); ++i) {
        if (prof.kinds[i] == poly::ExtremumKind::Maximum) {
            if (prof.values[i] - M <= grouping_tol * M) ++inv.n_plus;
        } else {
            if (-prof.values[i] - m <= grouping_tol * m) ++inv.n_minus;
        }
    }
    return inv;
}

double bset_radius(const SpectrumInvariants& inv, double theta) {
    const double s2 = std::sin(0.5 * theta) * std::sin(0.5 * theta);
    const double c2 = std::cos(0.5 * theta) * std::cos(0.5 * theta);
    const double inf = std::numeric_limits<double>::infinity();
    const double rM = s2 > 0 ? inv.M / (4.0 * s2) : inf;
    const double rm = c2 > 0 ? inv.m / (4.0 * c2) : inf;
    return std::min(rM, rm);
}

BSetQuery bset_contains(const SpectrumInvariants& inv, cplx z,
                        double boundary_tol) {
    if (boundary_tol < 0)
        throw validation_error("bset_contains: boundary_tol must be >= 0");

    BSetQuery q;
    q.z = z;
    if (z == cplx(0.0, 0.0)) {
        q.location = BSetLocation::Interior;
        q.fiber_dim = inv.n - 1;
        return q;
    }

    const double theta = std::arg(z);
    const double s2 = std::sin(0.5 * theta) * std::sin(0.5 * theta);
    const double c2 = std::cos(0.5 * theta) * std::cos(0.5 * theta);
    const double inf = std::numeric_limits<double>::infinity();
    const double rM = s2 > 0 ? inv.M / (4.0 * s2) : inf;
    const double rm = c2 > 0 ? inv.m / (4.0 * c2) : inf;
    const double r = std::min(rM, rm);
    const double az = std::abs(z);

    if (az > r + boundary_tol) {
        q.location = BSetLocation::Outside;
        return q;
    }
    if (az < r - boundary_tol) {
        q.location = BSetLocation::Interior;
        q.fiber_dim = inv.n - 1;
        return q;
    }
    if (std::abs(rM - rm) <= boundary_tol) {
        q.location = BSetLocation::Corner;
        q.fiber_dim = inv.n - 1 - inv.n_plus - inv.n_minus;
    } else if (rM < rm) {
        q.location = BSetLocation::BoundaryPlus;
        q.fiber_dim = inv.n - 1 - inv.n_plus;
    } else {
        q.location = BSetLocation::BoundaryMinus;
        q.fiber_dim = inv.n - 1 - inv.n_minus;
    }
    return q;
}

ManifoldVerdict manifold_status(const SpectrumInvariants& inv) {
    return (inv.n_plus > 1 || inv.n_minus > 1)
               ? ManifoldVerdict::NotHomologyManifold
               : ManifoldVerdict::NoObstructionGenericSmooth;
}

OrbitSpaceDescriptor orbit_space_descriptor(int n, const SpectrumInvariants& inv) {
    if (n < 3) throw validation_error("orbit_space_descriptor: n must be >= 3");
    return {inv.n_minus, inv.n_plus, n - 1 - inv.n_minus - inv.n_plus};
}

bool is_chebyshev_degenerate(const Spectrum& s, double tol) {
    if (!(tol > 0))
        throw validation_error("is_chebyshev_degenerate: tol must be positive");
    const auto F = poly::from_roots(s.lambda);
    const auto prof = poly::critical_profile(F);

    double max_lo = std::numeric_limits<double>::infinity(), max_hi = 0.0;
    double min_lo = std::numeric_limits<double>::infinity(), min_hi = 0.0;
    for (size_t i = 0; i < prof.points.size(); ++i) {
        if (prof.kinds[i] == poly::ExtremumKind::Maximum) {
            max_lo = std::min(max_lo, prof.values[i]);
            max_hi = std::max(max_hi, prof.values[i]);
        } else {
            min_lo = std::min(min_lo, -prof.values[i]);
            min_hi = std::max(min_hi, -prof.values[i]);
        }
    }
    const bool max_agree = max_hi - max_lo <= tol * max_hi;
    const bool min_agree = min_hi - min_lo <= tol * min_hi;
    return max_agree && min_agree;
}

} // namespace isotoda::spectrum
