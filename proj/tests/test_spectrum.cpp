#include "doctest.h"

#include <cmath>

#include "isotoda/spectrum.hpp"
#include "test_helpers.hpp"

using namespace isotoda;
using namespace isotoda::spectrum;

namespace {
// 2/(3 sqrt 3), the shared critical value of x(x-1)(x-2)
const double kCubicM = 0.38490017945975052;
}

TEST_CASE("spectrum validation") {
    CHECK_THROWS_AS(Spectrum({0.0, 1.0}), validation_error);
    CHECK_THROWS_AS(Spectrum({0.0, 1.0, 1.0}), validation_error);
    CHECK_THROWS_AS(Spectrum({2.0, 1.0, 0.0}), validation_error);
    CHECK_NOTHROW(Spectrum({0.0, 1.0, 2.0}));
}

TEST_CASE("analyze") {
    SUBCASE("cubic closed form") {
        const auto inv = analyze(Spectrum({0.0, 1.0, 2.0}), 1e-9);
        CHECK(inv.M == doctest::Approx(kCubicM).epsilon(1e-12));
        CHECK(inv.m == doctest::Approx(kCubicM).epsilon(1e-12));
        CHECK(inv.n_plus == 1);
        CHECK(inv.n_minus == 1);
        CHECK(inv.n == 3);
    }
    SUBCASE("Chebyshev spectrum reaches maximal degeneration") {
        for (int n = 4; n <= 7; ++n) {
            const auto inv = analyze(Spectrum(testutil::chebyshev_spectrum(n)), 1e-6);
            CHECK(inv.n_plus + inv.n_minus == n - 1);
            CHECK(inv.n_plus == (n - 1) / 2);
            CHECK(inv.n_minus == n / 2);
        }
    }
    SUBCASE("generic perturbation is non-degenerate") {
        std::uint64_t state = 7;
        auto u01 = [&state]() {
            state += 0x9e3779b97f4a7c15ull;
            std::uint64_t z = state;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            return static_cast<double>((z ^ (z >> 31)) >> 11) * 0x1.0p-53;
        };
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 4 + trial % 5;
            std::vector<double> lambda(n);
            double x = 0.0;
            for (int i = 0; i < n; ++i) {
                x += 0.5 + u01();  // noise far above grouping_tol
                lambda[i] = x;
            }
            const auto inv = analyze(Spectrum(std::move(lambda)), 1e-9);
            CHECK(inv.n_plus == 1);
            CHECK(inv.n_minus == 1);
        }
    }
}

TEST_CASE("bset radius and membership") {
    const auto inv = analyze(Spectrum({0.0, 1.0, 2.0}), 1e-9);

    SUBCASE("axis radii are M/4 and m/4") {
        CHECK(bset_radius(inv, M_PI) == doctest::Approx(inv.M / 4).epsilon(1e-12));
        CHECK(bset_radius(inv, 0.0) == doctest::Approx(inv.m / 4).epsilon(1e-12));
    }
    SUBCASE("zero is interior with full fiber") {
        const auto q = bset_contains(inv, cplx(0.0, 0.0), 1e-9);
        CHECK(q.location == BSetLocation::Interior);
        CHECK(q.fiber_dim == 2);
    }
    SUBCASE("negative-axis boundary point") {
        const auto q = bset_contains(inv, cplx(-inv.M / 4, 0.0), 1e-9);
        CHECK(q.location == BSetLocation::BoundaryPlus);
        CHECK(q.fiber_dim == 1);
    }
    SUBCASE("far point is outside") {
        const auto q = bset_contains(inv, cplx(-inv.M, 0.0), 1e-9);
        CHECK(q.location == BSetLocation::Outside);
        CHECK(!q.fiber_dim.has_value());
    }
    SUBCASE("corner classification and fiber drop") {
        // M = m here, so the corners sit on the imaginary axis at (M+m)/4.
        const double r = (inv.M + inv.m) / 4;
        const auto q = bset_contains(inv, cplx(0.0, r), 1e-9);
        CHECK(q.location == BSetLocation::Corner);
        CHECK(q.fiber_dim == 0);
    }
    SUBCASE("radial monotonicity") {
        for (int i = 0; i < 32; ++i) {
            const double theta = -M_PI + 2 * M_PI * i / 32.0;
            const double r = bset_radius(inv, theta);
            const cplx z = std::polar(0.999 * r, theta);
            for (double c : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const auto q = bset_contains(inv, c * z, 1e-9);
                CHECK(q.location != BSetLocation::Outside);
            }
        }
    }
    SUBCASE("fiber dimension drop equals n_plus + n_minus") {
        const auto interior = bset_contains(inv, cplx(0.0, 0.0), 1e-9);
        const double r = (inv.M + inv.m) / 4;
        const auto corner = bset_contains(inv, cplx(0.0, r), 1e-9);
        CHECK(*interior.fiber_dim - *corner.fiber_dim == inv.n_plus + inv.n_minus);
    }
}

TEST_CASE("manifold verdict") {
    SUBCASE("generic is unobstructed") {
        SpectrumInvariants inv;
        inv.n = 5;
        inv.n_plus = inv.n_minus = 1;
        CHECK(manifold_status(inv) == ManifoldVerdict::NoObstructionGenericSmooth);
    }
    SUBCASE("n_plus > 1 obstructs") {
        SpectrumInvariants inv;
        inv.n = 4;
        inv.n_plus = 2;
        inv.n_minus = 1;
        CHECK(manifold_status(inv) == ManifoldVerdict::NotHomologyManifold);
    }
    SUBCASE("Chebyshev-degenerate spectra with n >= 4 obstruct") {
        for (int n = 4; n <= 6; ++n) {
            const auto inv = analyze(Spectrum(testutil::chebyshev_spectrum(n)), 1e-6);
            CHECK(manifold_status(inv) == ManifoldVerdict::NotHomologyManifold);
        }
    }
}

TEST_CASE("orbit space descriptor") {
    SpectrumInvariants inv;
    inv.n_plus = inv.n_minus = 1;
    SUBCASE("n=3 gives the 4-sphere triple") {
        const auto d = orbit_space_descriptor(3, inv);
        CHECK(d.n_minus == 1);
        CHECK(d.n_plus == 1);
        CHECK(d.torus_rank == 0);
    }
    SUBCASE("n=5 generic keeps a torus factor") {
        const auto d = orbit_space_descriptor(5, inv);
        CHECK(d.torus_rank == 2);
    }
    SUBCASE("degenerate split") {
        inv.n_plus = 2;
        inv.n_minus = 1;
        const auto d = orbit_space_descriptor(4, inv);
        CHECK(d.n_minus == 1);
        CHECK(d.n_plus == 2);
        CHECK(d.torus_rank == 0);
    }
}

TEST_CASE("chebyshev degeneracy detection") {
    CHECK(is_chebyshev_degenerate(Spectrum(testutil::chebyshev_spectrum(4)), 1e-9));
    CHECK(is_chebyshev_degenerate(Spectrum(testutil::chebyshev_spectrum(6)), 1e-9));
    CHECK(is_chebyshev_degenerate(Spectrum({0.0, 1.0, 2.0}), 1e-9));
    CHECK_FALSE(is_chebyshev_degenerate(Spectrum({0.0, 1.0, 2.0, 5.0}), 1e-6));
}
