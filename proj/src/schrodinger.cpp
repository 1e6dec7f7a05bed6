#include "isotoda/schrodinger.hpp"

#include <algorithm>
#include <cmath>

namespace isotoda::schrodinger {

namespace {

// Transfer-matrix products are accumulated in quad precision. Inside
// forbidden zones the product norm grows like exp(n * Lyapunov) while its
// determinant is exactly prod b_{i-1}/b_i; double-precision products lose
// the determinant to cancellation long before n = 8.
#if defined(__SIZEOF_FLOAT128__)
using real_x = __float128;
#else
using real_x = long double;
#endif

struct Mat2x {
    real_x m00, m01, m10, m11;
};

Mat2x mul(const Mat2x& a, const Mat2x& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

std::vector<double> gauged_b(const PeriodicJacobi& L) {
    std::vector<double> b(L.n());
    for (int i = 0; i < L.n(); ++i) {
        const cplx v = L.b[i];
        if (std::abs(v.imag()) > 1e-13 * std::max(1.0, std::abs(v)))
            throw validation_error(
                "schrodinger: matrix must be gauged (all b_i real); run gauge_normalize first");
        if (!(v.real() > 0))
            throw degenerate_locus_error(
                "schrodinger: all b_i must be positive (degenerate locus)");
        b[i] = v.real();
    }
    return b;
}

Mat2x transfer_x(const std::vector<double>& a, const std::vector<double>& b,
                 int i, real_x x) {
    const int n = static_cast<int>(a.size());
    const double b_prev = b[(i - 1 + n) % n];
    const double b_cur = b[i];
    return {0.0, 1.0, -real_x(b_prev) / real_x(b_cur),
            (x - real_x(a[i])) / real_x(b_cur)};
}

Mat2x monodromy_x(const std::vector<double>& a, const std::vector<double>& b,
                  real_x x) {
    const int n = static_cast<int>(a.size());
    Mat2x m{1.0, 0.0, 0.0, 1.0};
    for (int i = 0; i < n; ++i) m = mul(transfer_x(a, b, i, x), m);
    return m;
}

// Gershgorin hull of the gauged matrix; all band edges lie inside.
std::pair<double, double> spectral_hull(const std::vector<double>& a,
                                        const std::vector<double>& b) {
    const int n = static_cast<int>(a.size());
    double lo = a[0], hi = a[0];
    for (int i = 0; i < n; ++i) {
        const double r = b[i] + b[(i - 1 + n) % n];
        lo = std::min(lo, a[i] - r);
        hi = std::max(hi, a[i] + r);
    }
    return {lo, hi};
}

} // namespace

std::array<double, 4> transfer_matrix(const PeriodicJacobi& L, int i, double x) {
    const int n = L.n();
    if (i < 1 || i > n) throw validation_error("transfer_matrix: index out of range");
    const std::vector<double> b = gauged_b(L);
    const Mat2x m = transfer_x(L.a, b, i - 1, x);
    return {static_cast<double>(m.m00), static_cast<double>(m.m01),
            static_cast<double>(m.m10), static_cast<double>(m.m11)};
}

Monodromy monodromy(const PeriodicJacobi& L, double x) {
    const std::vector<double> b = gauged_b(L);
    const Mat2x m = monodromy_x(L.a, b, x);
    Monodromy out;
    out.entries = {cplx(static_cast<double>(m.m00), 0.0),
                   cplx(static_cast<double>(m.m01), 0.0),
                   cplx(static_cast<double>(m.m10), 0.0),
                   cplx(static_cast<double>(m.m11), 0.0)};
    out.det = static_cast<double>(m.m00 * m.m11 - m.m01 * m.m10);
    out.trace = static_cast<double>(m.m00 + m.m11);
    return out;
}

poly::RealPolynomial spectral_polynomial(const PeriodicJacobi& L) {
    const int n = L.n();
    const std::vector<double> b = gauged_b(L);

    real_x B = 1.0;
    for (double v : b) B *= real_x(v);

    const auto [lo, hi] = spectral_hull(L.a, b);
    const double mid = 0.5 * (lo + hi);
    const double half = std::max(0.5 * (hi - lo), 1.0);

    // Chebyshev nodes; n+1 of them pin the degree-n polynomial exactly.
    std::vector<real_x> nodes(n + 1), vals(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double theta = M_PI * (2.0 * j + 1.0) / (2.0 * (n + 1));
        const double xj = mid + half * std::cos(theta);
        nodes[j] = real_x(xj);
        const Mat2x m = monodromy_x(L.a, b, nodes[j]);
        vals[j] = B * (m.m00 + m.m11);
    }

    // Newton divided differences, then expansion to monomial coefficients.
    std::vector<real_x> dd = vals;
    for (int level = 1; level <= n; ++level)
        for (int j = n; j >= level; --j)
            dd[j] = (dd[j] - dd[j - 1]) / (nodes[j] - nodes[j - level]);

    std::vector<real_x> coeff(n + 1, real_x(0));
    coeff[0] = dd[n];
    int deg = 0;
    for (int j = n - 1; j >= 0; --j) {
        for (int k = deg + 1; k > 0; --k)
            coeff[k] = coeff[k - 1] - nodes[j] * coeff[k];
        coeff[0] = dd[j] - nodes[j] * coeff[0];
        ++deg;
    }

    std::vector<double> out(n + 1);
    for (int k = 0; k <= n; ++k) out[k] = static_cast<double>(coeff[k]);
    if (std::abs(out[n] - 1.0) > 1e-8)
        throw numeric_error("spectral_polynomial: interpolation lost monicity");
    return poly::RealPolynomial(std::move(out));
}

ForbiddenZones zones_from_polynomial(const poly::RealPolynomial& P, double B,
                                     double tol) {
    if (!(B > 0)) throw validation_error("zones: B must be positive");
    if (!(tol >= 0)) throw validation_error("zones: tol must be >= 0");
    const int n = P.degree();
    const auto prof = poly::critical_profile(P);

    double value_scale = 2.0 * B;
    for (double v : prof.values) value_scale = std::max(value_scale, std::abs(v));
    const double slack = 1e-11 * value_scale;

    // phi is positive exactly on the forbidden side of the relevant cut:
    // upper zones live where P > 2B, lower zones where P < -2B.
    auto phi = [&](double x, bool upper) {
        return upper ? P(x) - 2.0 * B : -(P(x) + 2.0 * B);
    };

    // Bisection for the sign change of phi between inner (phi > 0) and
    // outer (phi < 0); the two arguments may come in either order.
    auto cut = [&](double pos_side, double neg_side, bool upper) {
        double xa = pos_side, xb = neg_side;
        for (int it = 0;
             it < 300 && std::abs(xb - xa) > 1e-14 * (1.0 + std::abs(xa)); ++it) {
            const double m = 0.5 * (xa + xb);
            if (phi(m, upper) > 0)
                xa = m;
            else
                xb = m;
        }
        return 0.5 * (xa + xb);
    };

    // Each forbidden zone brackets one critical point of P. At the
    // neighboring critical points (opposite kind) phi is negative, so each
    // endpoint is a clean sign change.
    struct RawZone {
        double lo, hi;
        bool touch;
        bool upper;
    };
    std::vector<RawZone> raw(n - 1);

    for (int k = 0; k < n - 1; ++k) {
        const bool upper = prof.kinds[k] == poly::ExtremumKind::Maximum;
        const double peak = phi(prof.points[k], upper);
        if (peak < -slack)
            throw numeric_error(
                "zones: extremum of P inside the band; (P, B) is not a valid pair");
        if (peak <= slack) {
            raw[k] = {prof.points[k], prof.points[k], true, upper};
            continue;
        }
        double far_left =
            k > 0 ? prof.points[k - 1] : prof.points[0] - 1.0;
        while (k == 0 && phi(far_left, upper) > 0) far_left -= 1.0;
        double far_right =
            k + 1 < n - 1 ? prof.points[k + 1] : prof.points[n - 2] + 1.0;
        while (k + 1 == n - 1 && phi(far_right, upper) > 0) far_right += 1.0;
        raw[k] = {cut(prof.points[k], far_left, upper),
                  cut(prof.points[k], far_right, upper), false, upper};
    }

    // Outermost band edges: walk outward until phi of the opposite family
    // turns positive, then bisect back. The top edge is always a root of
    // P - 2B (the top critical point of a monic P is a minimum).
    auto outer_edge = [&](double from, bool upper, int dir) {
        double step = 1.0;
        double inner = from, outer = from + dir * step;
        while (phi(outer, upper) < 0) {
            inner = outer;
            step *= 2.0;
            outer += dir * step;
        }
        return cut(outer, inner, upper);
    };

    const bool first_upper = raw.front().upper;
    const double x_bottom = outer_edge(raw.front().lo, !first_upper, -1);
    const double x_top = outer_edge(raw.back().hi, true, +1);

    ForbiddenZones out;
    out.roots.push_back(x_bottom);
    for (const RawZone& z : raw) {
        out.roots.push_back(z.lo);
        out.roots.push_back(z.hi);
    }
    out.roots.push_back(x_top);

    const double diam = x_top - x_bottom;
    for (const RawZone& z : raw) {
        Zone zone;
        zone.lo = z.lo;
        zone.hi = z.hi;
        zone.upper = z.upper;
        zone.collapsed = z.touch || (z.hi - z.lo) <= tol * diam;
        out.zones.push_back(zone);
    }
    return out;
}

ForbiddenZones forbidden_zones(const PeriodicJacobi& L, double tol) {
    const std::vector<double> b = gauged_b(L);
    double B = 1.0;
    for (double v : b) B *= v;
    return zones_from_polynomial(spectral_polynomial(L), B, tol);
}

} // namespace isotoda::schrodinger
