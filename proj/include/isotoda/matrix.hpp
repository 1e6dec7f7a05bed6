#ifndef ISOTODA_MATRIX_HPP
#define ISOTODA_MATRIX_HPP

#include <complex>
#include <vector>

#include "isotoda/errors.hpp"
#include "isotoda/spectrum.hpp"

namespace isotoda::matrix {

using cplx = std::complex<double>;
using Dense = std::vector<std::vector<cplx>>;

// Hermitian periodic tridiagonal matrix: real diagonal a_1..a_n, complex
// off-diagonal b_1..b_{n-1} on the superdiagonal and b_n at the (n,1)
// corner. The assembled matrix carries conj(b_i) below the diagonal and
// conj(b_n) at (1,n).
struct PeriodicJacobi {
    std::vector<double> a;
    std::vector<cplx> b;

    PeriodicJacobi(std::vector<double> diag, std::vector<cplx> off);
    int n() const { return static_cast<int>(a.size()); }

    static PeriodicJacobi diagonal(std::vector<double> diag);
};

Dense assemble(const PeriodicJacobi& L);

struct TorusElement {
    std::vector<cplx> t;  // unit modulus entries

    explicit TorusElement(std::vector<cplx> entries);
    static TorusElement identity(int n);
    TorusElement inverse() const;
    int n() const { return static_cast<int>(t.size()); }
};

// Conjugation action: b_i -> t_i t_{i+1}^{-1} b_i cyclically. Preserves the
// diagonal, all |b_i|, the product B and the spectrum.
PeriodicJacobi act(const TorusElement& t, const PeriodicJacobi& L);

cplx product_b(const PeriodicJacobi& L);

// Gauge-normalized form: base has every b_i real positive and the whole
// phase of B sits in the unit number w. act(gauge, original) equals
// assemble_lw(base, w).
struct GaugeForm {
    PeriodicJacobi base;
    cplx w;
    TorusElement gauge;
};

GaugeForm gauge_normalize(const PeriodicJacobi& L, double tol = 1e-12);

// The matrix L(w): base with the corner entry twisted, (n,1) = w b_n and
// (1,n) = conj(w) b_n.
PeriodicJacobi assemble_lw(const PeriodicJacobi& base, cplx w);

// Ascending eigenvalues of the assembled Hermitian matrix, computed with
// cyclic Jacobi rotations (deterministic sweep order).
std::vector<double> eigenvalues(const PeriodicJacobi& L);
std::vector<double> eigenvalues_dense(Dense A);

// Eigenvalues closer than rel_tol times the spectral diameter are treated
// as non-simple.
bool spectrum_is_simple(const std::vector<double>& eigs, double rel_tol = 1e-8);

inline constexpr int kDefaultFixedPointCap = 8;

// The n! diagonal matrices with permuted spectrum, in lexicographic
// permutation order.
std::vector<PeriodicJacobi> fixed_points(const spectrum::Spectrum& s,
                                         int cap = kDefaultFixedPointCap);

// Deterministic pseudo-random matrices for property tests and the CLI.
// gauged = true produces real positive b (a base form); otherwise b gets
// uniform random phases. Entries: a in [-1,1], |b| in [0.3, 1.2].
PeriodicJacobi random_matrix(std::uint64_t seed, int n, bool gauged);

} // namespace isotoda::matrix

#endif
