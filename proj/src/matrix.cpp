#include "isotoda/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isotoda::matrix {

namespace {

double frobenius(const Dense& A) {
    double s = 0.0;
    for (const auto& row : A)
        for (cplx v : row) s += std::norm(v);
    return std::sqrt(s);
}

double off_norm(const Dense& A) {
    const int n = static_cast<int>(A.size());
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += std::norm(A[i][j]);
    return std::sqrt(s);
}

} // namespace

PeriodicJacobi::PeriodicJacobi(std::vector<double> diag, std::vector<cplx> off)
    : a(std::move(diag)), b(std::move(off)) {
    if (a.size() != b.size())
        throw validation_error("matrix: a and b must have the same length");
    if (a.size() < 3) throw validation_error("matrix: n must be at least 3");
}

PeriodicJacobi PeriodicJacobi::diagonal(std::vector<double> diag) {
    std::vector<cplx> off(diag.size(), cplx(0.0, 0.0));
    return PeriodicJacobi(std::move(diag), std::move(off));
}

Dense assemble(const PeriodicJacobi& L) {
    const int n = L.n();
    Dense A(n, std::vector<cplx>(n, cplx(0.0, 0.0)));
    for (int i = 0; i < n; ++i) A[i][i] = L.a[i];
    for (int i = 0; i + 1 < n; ++i) {
        A[i][i + 1] = L.b[i];
        A[i + 1][i] = std::conj(L.b[i]);
    }
    A[n - 1][0] = L.b[n - 1];
    A[0][n - 1] = std::conj(L.b[n - 1]);
    return A;
}

TorusElement::TorusElement(std::vector<cplx> entries) : t(std::move(entries)) {
    for (auto& v : t) {
        const double m = std::abs(v);
        if (std::abs(m - 1.0) > 1e-9)
            throw validation_error("torus element entries must have unit modulus");
        v /= m;
    }
}

TorusElement TorusElement::identity(int n) {
    return TorusElement(std::vector<cplx>(n, cplx(1.0, 0.0)));
}

TorusElement TorusElement::inverse() const {
    std::vector<cplx> inv(t.size());
    for (size_t i = 0; i < t.size(); ++i) inv[i] = std::conj(t[i]);
    return TorusElement(std::move(inv));
}

PeriodicJacobi act(const TorusElement& t, const PeriodicJacobi& L) {
    const int n = L.n();
    if (t.n() != n) throw validation_error("act: torus element size mismatch");
    std::vector<cplx> b(n);
    for (int i = 0; i < n; ++i) {
        const int next = (i + 1) % n;
        b[i] = t.t[i] * std::conj(t.t[next]) * L.b[i];
    }
    return PeriodicJacobi(L.a, std::move(b));
}

cplx product_b(const PeriodicJacobi& L) {
    cplx p(1.0, 0.0);
    for (cplx v : L.b) p *= v;
    return p;
}

GaugeForm gauge_normalize(const PeriodicJacobi& L, double tol) {
    const int n = L.n();
    for (cplx v : L.b)
        if (std::abs(v) <= tol)
            throw degenerate_locus_error(
                "gauge_normalize: matrix lies on the degenerate locus (some b_i ~ 0)");

    // t_1 = 1 and t_{i+1} = t_i b_i / |b_i| rotates b_1..b_{n-1} positive;
    // the corner then carries the full phase w = B/|B|.
    std::vector<cplx> t(n);
    t[0] = cplx(1.0, 0.0);
    for (int i = 0; i + 1 < n; ++i) t[i + 1] = t[i] * (L.b[i] / std::abs(L.b[i]));
    TorusElement gauge{std::move(t)};

    std::vector<cplx> base_b(n);
    for (int i = 0; i < n; ++i) base_b[i] = cplx(std::abs(L.b[i]), 0.0);

    const cplx B = product_b(L);
    GaugeForm g{PeriodicJacobi(L.a, std::move(base_b)), B / std::abs(B),
                std::move(gauge)};
    return g;
}

PeriodicJacobi assemble_lw(const PeriodicJacobi& base, cplx w) {
    std::vector<cplx> b = base.b;
    b[base.n() - 1] *= w;
    return PeriodicJacobi(base.a, std::move(b));
}

std::vector<double> eigenvalues_dense(Dense A) {
    const int n = static_cast<int>(A.size());
    const double scale = frobenius(A);
    if (scale == 0.0) return std::vector<double>(n, 0.0);

    const double target = 1e-14 * scale;
    const double skip = 1e-18 * scale;
    constexpr int kMaxSweeps = 100;

    int sweep = 0;
    while (off_norm(A) > target) {
        if (++sweep > kMaxSweeps)
            throw numeric_error("eigenvalues: Jacobi iteration did not converge");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = std::abs(A[p][q]);
                if (apq <= skip) continue;

                // Phase rotation making A[p][q] real positive.
                const cplx u = A[p][q] / apq;
                for (int k = 0; k < n; ++k) A[k][q] *= std::conj(u);
                for (int k = 0; k < n; ++k) A[q][k] *= u;

                const double alpha = A[p][p].real();
                const double beta = A[q][q].real();
                const double g = A[p][q].real();
                const double tau = (beta - alpha) / (2.0 * g);
                const double tt =
                    (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + tt * tt);
                const double s = tt * c;

                for (int k = 0; k < n; ++k) {
                    const cplx tp = A[k][p], tq = A[k][q];
                    A[k][p] = c * tp - s * tq;
                    A[k][q] = s * tp + c * tq;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx tp = A[p][k], tq = A[q][k];
                    A[p][k] = c * tp - s * tq;
                    A[q][k] = s * tp + c * tq;
                }
                A[p][q] = A[q][p] = cplx(0.0, 0.0);
                A[p][p] = cplx(A[p][p].real(), 0.0);
                A[q][q] = cplx(A[q][q].real(), 0.0);
            }
        }
    }

    std::vector<double> eigs(n);
    for (int i = 0; i < n; ++i) eigs[i] = A[i][i].real();
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

std::vector<double> eigenvalues(const PeriodicJacobi& L) {
    return eigenvalues_dense(assemble(L));
}

bool spectrum_is_simple(const std::vector<double>& eigs, double rel_tol) {
    if (eigs.size() < 2) return true;
    const double diam = eigs.back() - eigs.front();
    if (diam <= 0) return false;
    for (size_t i = 0; i + 1 < eigs.size(); ++i)
        if (eigs[i + 1] - eigs[i] < rel_tol * diam) return false;
    return true;
}

std::vector<PeriodicJacobi> fixed_points(const spectrum::Spectrum& s, int cap) {
    const int n = s.n();
    if (n > cap)
        throw cap_error("fixed_points: n exceeds the n! enumeration cap");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<PeriodicJacobi> out;
    do {
        std::vector<double> diag(n);
        for (int i = 0; i < n; ++i) diag[i] = s.lambda[perm[i]];
        out.push_back(PeriodicJacobi::diagonal(std::move(diag)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

PeriodicJacobi random_matrix(std::uint64_t seed, int n, bool gauged) {
    if (n < 3) throw validation_error("random_matrix: n must be at least 3");
    // splitmix64: identical streams on every platform, unlike the standard
    // library distributions.
    std::uint64_t state = seed;
    auto next_u01 = [&state]() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z = z ^ (z >> 31);
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    };

    std::vector<double> a(n);
    std::vector<cplx> b(n);
    for (int i = 0; i < n; ++i) a[i] = -1.0 + 2.0 * next_u01();
    for (int i = 0; i < n; ++i) {
        const double mag = 0.3 + 0.9 * next_u01();
        if (gauged) {
            b[i] = cplx(mag, 0.0);
        } else {
            const double phase = 2.0 * M_PI * next_u01();
            b[i] = std::polar(mag, phase);
        }
    }
    return PeriodicJacobi(std::move(a), std::move(b));
}

} // namespace isotoda::matrix
