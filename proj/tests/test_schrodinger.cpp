#include "doctest.h"

#include <cmath>

#include "isotoda/matrix.hpp"
#include "isotoda/poly.hpp"
#include "isotoda/schrodinger.hpp"
#include "isotoda/spectrum.hpp"
#include "test_helpers.hpp"

using namespace isotoda;
using namespace isotoda::schrodinger;
using matrix::PeriodicJacobi;

namespace {

PeriodicJacobi gauged_random(std::uint64_t seed, int n) {
    return matrix::random_matrix(seed, n, true);
}

double product_F(const std::vector<double>& lambda, double x) {
    double v = 1.0;
    for (double l : lambda) v *= x - l;
    return v;
}

} // namespace

TEST_CASE("transfer matrix") {
    SUBCASE("free recurrence at x = 0") {
        PeriodicJacobi L({0, 0, 0}, {cplx(1, 0), cplx(1, 0), cplx(1, 0)});
        const auto m = transfer_matrix(L, 1, 0.0);
        CHECK(m[0] == 0.0);
        CHECK(m[1] == 1.0);
        CHECK(m[2] == -1.0);
        CHECK(m[3] == 0.0);
    }
    SUBCASE("determinant is b_{i-1}/b_i") {
        const auto L = gauged_random(13, 6);
        for (int i = 1; i <= 6; ++i) {
            const auto m = transfer_matrix(L, i, 0.37);
            const double det = m[0] * m[3] - m[1] * m[2];
            const double expect =
                L.b[(i - 2 + 6) % 6].real() / L.b[i - 1].real();
            CHECK(det == doctest::Approx(expect).epsilon(1e-13));
        }
    }
    SUBCASE("degenerate and ungauged inputs rejected") {
        PeriodicJacobi zero({0, 0, 0}, {cplx(1, 0), cplx(0, 0), cplx(1, 0)});
        CHECK_THROWS_AS(transfer_matrix(zero, 1, 0.0), degenerate_locus_error);
        PeriodicJacobi phased({0, 0, 0}, {cplx(0, 1), cplx(1, 0), cplx(1, 0)});
        CHECK_THROWS_AS(transfer_matrix(phased, 1, 0.0), validation_error);
    }
}

TEST_CASE("monodromy") {
    SUBCASE("n=3 free point evaluates literally") {
        PeriodicJacobi L({0, 0, 0}, {cplx(1, 0), cplx(1, 0), cplx(1, 0)});
        const auto m = monodromy(L, 0.0);
        CHECK(m.entries[0].real() == doctest::Approx(0.0));
        CHECK(m.entries[1].real() == doctest::Approx(-1.0));
        CHECK(m.entries[2].real() == doctest::Approx(1.0));
        CHECK(m.entries[3].real() == doctest::Approx(0.0));
        CHECK(m.det == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("unimodularity across the spectral hull") {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            const int n = 3 + static_cast<int>(seed) % 5;
            const auto L = gauged_random(seed * 100, n);
            for (int i = 0; i < 100; ++i) {
                const double x = -3.0 + 6.0 * i / 99.0;
                CHECK(std::abs(monodromy(L, x).det - 1.0) <= 1e-10);
            }
        }
    }
    SUBCASE("trace interpolates a degree-n polynomial") {
        const auto L = gauged_random(9, 5);
        const auto P = spectral_polynomial(L);
        REQUIRE(P.degree() == 5);
        double B = 1.0;
        for (cplx b : L.b) B *= b.real();
        for (double x : {-1.3, -0.21, 0.55, 1.7, 2.9}) {
            const double lhs = B * monodromy(L, x).trace;
            CHECK(lhs == doctest::Approx(P(x)).epsilon(1e-10));
        }
    }
}

TEST_CASE("spectral polynomial") {
    SUBCASE("P = F + 2B Re w for random gauged matrices") {
        for (std::uint64_t seed : {41u, 42u, 43u, 44u}) {
            const int n = 3 + static_cast<int>(seed % 4);
            const auto base = gauged_random(seed, n);
            const cplx w = std::polar(1.0, 0.31 * static_cast<double>(seed));
            const auto lw = matrix::assemble_lw(base, w);
            const auto lambda = matrix::eigenvalues(lw);
            const auto P = spectral_polynomial(base);
            double B = 1.0;
            for (cplx b : base.b) B *= b.real();
            for (int i = 0; i <= 20; ++i) {
                const double x = lambda.front() - 0.5 +
                                 (lambda.back() - lambda.front() + 1.0) * i / 20.0;
                const double expect = product_F(lambda, x) + 2.0 * B * w.real();
                CHECK(P(x) == doctest::Approx(expect).epsilon(1e-9));
            }
        }
    }
    SUBCASE("roots of P -+ 2B are the spectra of L(1) and L(-1)") {
        const auto base = gauged_random(47, 5);
        const auto P = spectral_polynomial(base);
        double B = 1.0;
        for (cplx b : base.b) B *= b.real();

        auto shifted = [&](double c) {
            std::vector<double> coeffs = P.coeffs;
            coeffs[0] -= c;
            return poly::RealPolynomial(coeffs);
        };
        const auto plus = poly::real_roots(shifted(2.0 * B));
        const auto minus = poly::real_roots(shifted(-2.0 * B));
        const auto e_plus = matrix::eigenvalues(matrix::assemble_lw(base, cplx(1, 0)));
        const auto e_minus = matrix::eigenvalues(matrix::assemble_lw(base, cplx(-1, 0)));
        REQUIRE(plus.size() == 5);
        REQUIRE(minus.size() == 5);
        for (int i = 0; i < 5; ++i) {
            CHECK(plus[i] == doctest::Approx(e_plus[i]).epsilon(1e-8));
            CHECK(minus[i] == doctest::Approx(e_minus[i]).epsilon(1e-8));
        }
    }
    SUBCASE("scaling b scales B but keeps P monic") {
        const auto base = gauged_random(53, 4);
        PeriodicJacobi scaled = base;
        for (auto& b : scaled.b) b *= 1.7;
        const auto P = spectral_polynomial(scaled);
        CHECK(P.coeffs.back() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("forbidden zones") {
    SUBCASE("generic matrix: n-1 open zones, interleaved roots") {
        for (std::uint64_t seed : {71u, 72u}) {
            const int n = 4 + static_cast<int>(seed % 3);
            const auto L = gauged_random(seed, n);
            const auto fz = forbidden_zones(L);
            REQUIRE(static_cast<int>(fz.zones.size()) == n - 1);
            REQUIRE(static_cast<int>(fz.roots.size()) == 2 * n);
            // x1 < x2 <= x3 < x4 <= ...
            for (size_t i = 0; i + 1 < fz.roots.size(); ++i) {
                if (i % 2 == 0)
                    CHECK(fz.roots[i] < fz.roots[i + 1]);
                else
                    CHECK(fz.roots[i] <= fz.roots[i + 1]);
            }
            // parity: the top zone is lower, alternating downward
            for (int k = 0; k < n - 1; ++k)
                CHECK(fz.zones[k].upper == ((n - 2 - k) % 2 == 1));
        }
    }
    SUBCASE("zone endpoints agree with the merged root list") {
        const auto L = gauged_random(73, 5);
        const auto fz = forbidden_zones(L);
        for (size_t k = 0; k < fz.zones.size(); ++k) {
            CHECK(fz.zones[k].lo == fz.roots[2 * k + 1]);
            CHECK(fz.zones[k].hi == fz.roots[2 * k + 2]);
        }
    }
    SUBCASE("upper zones collapse exactly when 2B reaches M") {
        // lambda = (0,1,2,5): distinct m and M, so only one family collapses.
        const spectrum::Spectrum s({0.0, 1.0, 2.0, 5.0});
        const auto inv = spectrum::analyze(s, 1e-9);
        REQUIRE(inv.M < inv.m);
        const auto F = poly::from_roots(s.lambda);

        const auto collapsed = zones_from_polynomial(F, inv.M / 2.0, 1e-7);
        int upper_collapsed = 0, lower_collapsed = 0;
        for (const auto& z : collapsed.zones) {
            if (z.collapsed && z.upper) ++upper_collapsed;
            if (z.collapsed && !z.upper) ++lower_collapsed;
        }
        CHECK(upper_collapsed == inv.n_plus);
        CHECK(lower_collapsed == 0);

        const auto open = zones_from_polynomial(F, 0.45 * inv.M, 1e-7);
        for (const auto& z : open.zones) CHECK_FALSE(z.collapsed);
    }
    SUBCASE("Chebyshev point collapses everything") {
        const auto lambda = testutil::chebyshev_spectrum(5);
        const auto inv = spectrum::analyze(spectrum::Spectrum(lambda), 1e-6);
        const auto F = poly::from_roots(lambda);
        // M = m for Chebyshev, so 2B = M collapses all n-1 zones.
        const auto fz = zones_from_polynomial(F, inv.M / 2.0, 1e-7);
        int collapsed_upper = 0, collapsed_lower = 0;
        for (const auto& z : fz.zones) {
            REQUIRE(z.collapsed);
            (z.upper ? collapsed_upper : collapsed_lower)++;
        }
        CHECK(collapsed_upper == inv.n_plus);
        CHECK(collapsed_lower == inv.n_minus);
    }
    SUBCASE("fiber dimension matches open zone count") {
        const auto L = gauged_random(99, 6);
        const auto fz = forbidden_zones(L);
        int open = 0;
        for (const auto& z : fz.zones)
            if (!z.collapsed) ++open;
        CHECK(open == 5);  // generic: Liouville-Arnold torus has dimension n-1
    }
}
