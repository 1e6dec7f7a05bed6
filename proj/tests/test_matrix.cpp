#include "doctest.h"

#include <cmath>

#include "isotoda/matrix.hpp"
#include "isotoda/toda.hpp"
#include "test_helpers.hpp"

using namespace isotoda;
using namespace isotoda::matrix;

namespace {

double entry_distance(const PeriodicJacobi& A, const PeriodicJacobi& B) {
    double d = 0.0;
    for (int i = 0; i < A.n(); ++i) {
        d = std::max(d, std::abs(A.a[i] - B.a[i]));
        d = std::max(d, std::abs(A.b[i] - B.b[i]));
    }
    return d;
}

} // namespace

TEST_CASE("torus action") {
    const PeriodicJacobi L = random_matrix(11, 5, false);

    SUBCASE("identity acts trivially") {
        CHECK(entry_distance(act(TorusElement::identity(5), L), L) == 0.0);
    }
    SUBCASE("scalar elements act trivially") {
        const cplx w = std::polar(1.0, 0.83);
        const TorusElement t(std::vector<cplx>(5, w));
        CHECK(entry_distance(act(t, L), L) < 1e-15);
    }
    SUBCASE("group action composes") {
        std::vector<cplx> u(5), v(5), uv(5);
        for (int i = 0; i < 5; ++i) {
            u[i] = std::polar(1.0, 0.1 + 0.3 * i);
            v[i] = std::polar(1.0, -0.7 + 0.2 * i);
            uv[i] = u[i] * v[i];
        }
        const auto lhs = act(TorusElement(u), act(TorusElement(v), L));
        const auto rhs = act(TorusElement(uv), L);
        CHECK(entry_distance(lhs, rhs) < 1e-14);
    }
    SUBCASE("action preserves |b|, a, B and the spectrum") {
        std::vector<cplx> u(5);
        for (int i = 0; i < 5; ++i) u[i] = std::polar(1.0, 1.1 * i - 0.4);
        const auto M = act(TorusElement(u), L);
        for (int i = 0; i < 5; ++i) {
            CHECK(M.a[i] == L.a[i]);
            CHECK(std::abs(M.b[i]) == doctest::Approx(std::abs(L.b[i])).epsilon(1e-14));
        }
        CHECK(std::abs(product_b(M) - product_b(L)) < 1e-14);
        const auto e1 = eigenvalues(L);
        const auto e2 = eigenvalues(M);
        for (int i = 0; i < 5; ++i)
            CHECK(e1[i] == doctest::Approx(e2[i]).epsilon(1e-10));
    }
    SUBCASE("size mismatch rejected") {
        CHECK_THROWS_AS(act(TorusElement::identity(4), L), validation_error);
    }
    SUBCASE("non-unit entries rejected") {
        CHECK_THROWS_AS(TorusElement({cplx(2.0, 0.0), cplx(1.0, 0.0), cplx(1.0, 0.0)}),
                        validation_error);
    }
}

TEST_CASE("product_b") {
    PeriodicJacobi L({0, 0, 0}, {cplx(1, 0), cplx(0, 1), cplx(2, 0)});
    CHECK(product_b(L) == cplx(0, 2));
    PeriodicJacobi ones({0, 0, 0}, {cplx(1, 0), cplx(1, 0), cplx(1, 0)});
    CHECK(product_b(ones) == cplx(1, 0));
    PeriodicJacobi zero({0, 0, 0}, {cplx(1, 0), cplx(0, 0), cplx(2, 0)});
    CHECK(product_b(zero) == cplx(0, 0));
}

TEST_CASE("gauge normalization") {
    SUBCASE("already positive real is fixed") {
        const PeriodicJacobi L = random_matrix(3, 4, true);
        const auto g = gauge_normalize(L);
        CHECK(g.w == cplx(1.0, 0.0));
        CHECK(entry_distance(g.base, L) < 1e-15);
        for (int i = 0; i < 4; ++i) CHECK(g.gauge.t[i] == cplx(1.0, 0.0));
    }
    SUBCASE("single phase moves to the corner") {
        PeriodicJacobi L({0, 0, 0, 0},
                         {cplx(0, 1), cplx(1, 0), cplx(1, 0), cplx(1, 0)});
        const auto g = gauge_normalize(L);
        CHECK(g.w.real() == doctest::Approx(0.0));
        CHECK(g.w.imag() == doctest::Approx(1.0));
        for (int i = 0; i < 4; ++i) {
            CHECK(g.base.b[i].real() == doctest::Approx(1.0));
            CHECK(g.base.b[i].imag() == 0.0);
        }
    }
    SUBCASE("random matrices: unit w, preserved spectrum, exact reconstruction") {
        for (std::uint64_t seed : {21u, 22u, 23u}) {
            const PeriodicJacobi L = random_matrix(seed, 6, false);
            const auto g = gauge_normalize(L);
            CHECK(std::abs(g.w) == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(g.w == product_b(L) / std::abs(product_b(L)));

            // act(gauge, L) must equal the twisted base L(w)
            const auto lw = assemble_lw(g.base, g.w);
            CHECK(entry_distance(act(g.gauge, L), lw) < 1e-14);
            // and undoing the gauge recovers L
            CHECK(entry_distance(act(g.gauge.inverse(), lw), L) < 1e-14);

            const auto e1 = eigenvalues(L);
            const auto e2 = eigenvalues(lw);
            for (int i = 0; i < 6; ++i)
                CHECK(e1[i] == doctest::Approx(e2[i]).epsilon(1e-10));
        }
    }
    SUBCASE("degenerate locus rejected") {
        PeriodicJacobi L({0, 0, 0}, {cplx(1, 0), cplx(0, 0), cplx(1, 0)});
        CHECK_THROWS_AS(gauge_normalize(L), degenerate_locus_error);
    }
    SUBCASE("idempotent on its image") {
        const auto g1 = gauge_normalize(random_matrix(29, 5, false));
        const auto lw = assemble_lw(g1.base, g1.w);
        const auto g2 = gauge_normalize(lw);
        CHECK(entry_distance(g2.base, g1.base) < 1e-14);
        CHECK(std::abs(g2.w - g1.w) < 1e-14);
    }
}

TEST_CASE("eigenvalues") {
    SUBCASE("diagonal matrix") {
        const auto L = PeriodicJacobi::diagonal({3.0, 1.0, 2.0});
        const auto e = eigenvalues(L);
        CHECK(e[0] == doctest::Approx(1.0));
        CHECK(e[1] == doctest::Approx(2.0));
        CHECK(e[2] == doctest::Approx(3.0));
    }
    SUBCASE("circulant n=3 has the 2cos(2 pi k/3) spectrum, flagged non-simple") {
        PeriodicJacobi L({0, 0, 0}, {cplx(1, 0), cplx(1, 0), cplx(1, 0)});
        const auto e = eigenvalues(L);
        CHECK(e[0] == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(e[1] == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(e[2] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK_FALSE(spectrum_is_simple(e));
    }
    SUBCASE("random spectra are simple") {
        CHECK(spectrum_is_simple(eigenvalues(random_matrix(31, 5, false))));
    }
    SUBCASE("larger Hermitian matrix against trace identities") {
        const auto L = random_matrix(77, 8, false);
        const auto e = eigenvalues(L);
        double tr = 0.0, tr2 = 0.0;
        for (double a : L.a) tr += a;
        for (double v : e) tr2 += v;
        CHECK(tr == doctest::Approx(tr2).epsilon(1e-12));

        // sum of squares equals the Frobenius norm of the Hermitian matrix
        double fro = 0.0;
        for (double a : L.a) fro += a * a;
        for (cplx b : L.b) fro += 2.0 * std::norm(b);
        double sq = 0.0;
        for (double v : e) sq += v * v;
        CHECK(fro == doctest::Approx(sq).epsilon(1e-12));
    }
}

TEST_CASE("fixed points") {
    const spectrum::Spectrum s({0.0, 1.0, 2.0});
    SUBCASE("n=3 gives all six diagonal equilibria") {
        const auto pts = fixed_points(s);
        REQUIRE(pts.size() == 6);
        for (const auto& L : pts) {
            CHECK(product_b(L) == cplx(0.0, 0.0));
            const auto dot = toda::vector_field(L);
            CHECK(entry_distance(dot, PeriodicJacobi::diagonal({0, 0, 0})) == 0.0);
        }
    }
    SUBCASE("n=4 gives 24 with identical sorted spectra") {
        const spectrum::Spectrum s4({0.0, 1.0, 2.0, 3.5});
        const auto pts = fixed_points(s4);
        REQUIRE(pts.size() == 24);
        for (const auto& L : pts) {
            const auto e = eigenvalues(L);
            for (int i = 0; i < 4; ++i)
                CHECK(e[i] == doctest::Approx(s4.lambda[i]));
        }
    }
    SUBCASE("cap enforced") {
        std::vector<double> big(9);
        for (int i = 0; i < 9; ++i) big[i] = i;
        CHECK_THROWS_AS(fixed_points(spectrum::Spectrum(std::move(big)), 8), cap_error);
    }
}
