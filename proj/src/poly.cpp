#include "isotoda/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace isotoda::poly {

namespace {

constexpr int kMaxBisection = 200;

void strip_trailing_zeros(std::vector<double>& c) {
    while (!c.empty() && c.back() == 0.0) c.pop_back();
}

// Magnitude scale of p at x, used for tangency and residual thresholds:
// sum |c_i| max(1,|x|)^i dominates |p(x)| and tracks the evaluation
// condition.
double eval_scale(const RealPolynomial& p, double x) {
    double ax = std::max(1.0, std::abs(x));
    double pw = 1.0;
    double s = 0.0;
    for (double c : p.coeffs) {
        s += std::abs(c) * pw;
        pw *= ax;
    }
    return std::max(s, std::numeric_limits<double>::min());
}

// Cauchy bound: all real roots lie in [-B, B].
double root_bound(const RealPolynomial& p) {
    const double lead = std::abs(p.leading());
    double m = 0.0;
    for (size_t i = 0; i + 1 < p.coeffs.size(); ++i)
        m = std::max(m, std::abs(p.coeffs[i]));
    return 1.0 + m / lead;
}

// One sign-changing root of p inside [lo, hi], refined to tol by bisection
// and a guarded Newton polish.
double bracketed_root(const RealPolynomial& p, const RealPolynomial& dp,
                      double lo, double hi, double flo, double tol) {
    double a = lo, b = hi, fa = flo;
    int it = 0;
    while (b - a > tol && it++ < kMaxBisection) {
        double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;  // interval at rounding resolution
        double fm = p(mid);
        if (fm == 0.0) return mid;
        if ((fa < 0) == (fm < 0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    if (it >= kMaxBisection)
        throw numeric_error("root bisection failed to converge");
    double x = 0.5 * (a + b);
    for (int k = 0; k < 8; ++k) {
        double fx = p(x);
        double dfx = dp(x);
        if (dfx == 0.0) break;
        double step = fx / dfx;
        double xn = x - step;
        if (!(xn > lo && xn < hi)) break;
        x = xn;
        if (std::abs(step) < 0.25 * tol) break;
    }
    return std::clamp(x, lo, hi);
}

} // namespace

RealPolynomial::RealPolynomial(std::vector<double> c) : coeffs(std::move(c)) {
    strip_trailing_zeros(coeffs);
}

double RealPolynomial::operator()(double x) const {
    double r = 0.0;
    for (size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i];
    return r;
}

RealPolynomial RealPolynomial::derivative() const {
    if (coeffs.size() <= 1) return RealPolynomial{};
    std::vector<double> d(coeffs.size() - 1);
    for (size_t i = 1; i < coeffs.size(); ++i)
        d[i - 1] = coeffs[i] * static_cast<double>(i);
    return RealPolynomial(std::move(d));
}

RealPolynomial from_roots(std::span<const double> roots) {
    std::vector<double> c{1.0};
    for (double r : roots) {
        c.push_back(0.0);
        for (size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
        c[0] *= -r;
    }
    return RealPolynomial(std::move(c));
}

std::vector<double> real_roots(const RealPolynomial& p,
                               std::optional<Interval> interval, double tol) {
    if (p.is_zero())
        throw validation_error("real_roots: polynomial is identically zero");
    if (!(tol > 0)) throw validation_error("real_roots: tol must be positive");

    const int deg = p.degree();
    if (deg == 0) return {};

    double lo = -root_bound(p);
    double hi = -lo;
    if (interval) {
        lo = std::max(lo, interval->lo);
        hi = std::min(hi, interval->hi);
        if (lo > hi) return {};
    }

    std::vector<double> roots;
    if (deg == 1) {
        double r = -p.coeffs[0] / p.coeffs[1];
        if (r >= lo - tol && r <= hi + tol) roots.push_back(r);
        return roots;
    }

    const RealPolynomial dp = p.derivative();
    std::vector<double> crit = real_roots(dp, std::nullopt, tol);

    // Subdivision points: critical points inside [lo, hi], then the ends.
    std::vector<double> pts;
    pts.push_back(lo);
    for (double c : crit)
        if (c > lo && c < hi) pts.push_back(c);
    pts.push_back(hi);

    std::vector<double> vals(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) vals[i] = p(pts[i]);

    for (size_t i = 0; i < pts.size(); ++i) {
        const bool is_crit = i > 0 && i + 1 < pts.size();
        if (is_crit &&
            std::abs(vals[i]) <= 64 * std::numeric_limits<double>::epsilon() *
                                     eval_scale(p, pts[i])) {
            roots.push_back(pts[i]);  // tangential (even-multiplicity) root
            continue;
        }
        if (i + 1 < pts.size() && vals[i] != 0.0 && vals[i + 1] != 0.0 &&
            (vals[i] < 0) != (vals[i + 1] < 0)) {
            roots.push_back(
                bracketed_root(p, dp, pts[i], pts[i + 1], vals[i], tol));
        } else if (i + 1 < pts.size() && vals[i + 1] == 0.0 && i + 2 == pts.size()) {
            roots.push_back(pts[i + 1]);  // root exactly at the right end
        } else if (i == 0 && vals[0] == 0.0) {
            roots.push_back(pts[0]);
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> merged;
    for (double r : roots) {
        if (merged.empty() || r - merged.back() > tol)
            merged.push_back(r);
    }
    if (interval) {
        std::erase_if(merged, [&](double r) {
            return r < interval->lo - tol || r > interval->hi + tol;
        });
    }
    return merged;
}

CriticalProfile critical_profile(const RealPolynomial& f, double tol) {
    const int n = f.degree();
    if (n < 3)
        throw validation_error("critical_profile: degree must be at least 3");

    std::vector<double> pts = real_roots(f.derivative(), std::nullopt, tol);
    if (static_cast<int>(pts.size()) != n - 1)
        throw numeric_error(
            "critical_profile: found " + std::to_string(pts.size()) +
            " critical points, expected " + std::to_string(n - 1) +
            " (roots too close together)");

    CriticalProfile prof;
    prof.points = std::move(pts);
    prof.values.resize(n - 1);
    prof.kinds.resize(n - 1);
    for (int i = 0; i < n - 1; ++i) prof.values[i] = f(prof.points[i]);

    // Monic F rises to +inf on the right, so the top critical point is a
    // local minimum and the kinds alternate downward from there.
    for (int i = n - 2; i >= 0; --i) {
        prof.kinds[i] = ((n - 2 - i) % 2 == 0) ? ExtremumKind::Minimum
                                               : ExtremumKind::Maximum;
    }
    return prof;
}

} // namespace isotoda::poly
