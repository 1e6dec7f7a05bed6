#ifndef ISOTODA_POLY_HPP
#define ISOTODA_POLY_HPP

#include <optional>
#include <span>
#include <vector>

#include "isotoda/errors.hpp"

namespace isotoda::poly {

// Univariate real polynomial, coefficients stored ascending by degree.
// Trailing zero coefficients are stripped; the zero polynomial is {}.
struct RealPolynomial {
    std::vector<double> coeffs;

    RealPolynomial() = default;
    explicit RealPolynomial(std::vector<double> c);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    double leading() const { return coeffs.empty() ? 0.0 : coeffs.back(); }

    double operator()(double x) const;
    RealPolynomial derivative() const;
};

// Monic polynomial with the given multiset of roots.
RealPolynomial from_roots(std::span<const double> roots);

struct Interval {
    double lo;
    double hi;
};

inline constexpr double kDefaultRootTol = 1e-12;

// All real roots of p, ascending, multiplicities collapsed, each within tol
// of a true root. Deterministic for fixed input. Roots are located by
// recursive derivative interlacing (the critical points of p split the line
// into monotone pieces) with bisection plus a guarded Newton polish.
std::vector<double> real_roots(const RealPolynomial& p,
                               std::optional<Interval> interval = std::nullopt,
                               double tol = kDefaultRootTol);

enum class ExtremumKind { Minimum, Maximum };

// The n-1 critical points of a monic polynomial with n simple real roots.
// Kinds alternate and the largest critical point is always a local minimum
// (the polynomial is monic, so it rises to +inf on the right).
struct CriticalProfile {
    std::vector<double> points;        // ascending
    std::vector<double> values;        // F at each point
    std::vector<ExtremumKind> kinds;
};

CriticalProfile critical_profile(const RealPolynomial& f,
                                 double tol = kDefaultRootTol);

} // namespace isotoda::poly

#endif
