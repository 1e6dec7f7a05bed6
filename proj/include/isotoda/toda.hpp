#ifndef ISOTODA_TODA_HPP
#define ISOTODA_TODA_HPP

#include <optional>
#include <vector>

#include "isotoda/matrix.hpp"

namespace isotoda::toda {

using matrix::cplx;
using matrix::Dense;
using matrix::PeriodicJacobi;

// The skew-Hermitian Lax partner P(L): b_i above the diagonal, -conj(b_i)
// below, -conj(b_n) at (1,n) and b_n at (n,1).
Dense lax_pair(const PeriodicJacobi& L);

// The commutator [L, P(L)]. It is Hermitian and keeps the periodic
// tridiagonal sparsity pattern, so it is returned in the same shape.
PeriodicJacobi vector_field(const PeriodicJacobi& L);

struct DriftRecord {
    double spectrum = 0.0;  // max |lambda_i(t) - lambda_i(0)| over sorted lists
    double abs_b = 0.0;     // | |B(t)| - |B(0)| |
    double arg_b = 0.0;     // max wrapped |arg b_i(t) - arg b_i(0)|, where |b_i| stays > tol
};

struct TodaTrajectory {
    std::vector<double> times;
    std::vector<PeriodicJacobi> states;
    std::vector<DriftRecord> drifts;   // parallel to times
    DriftRecord max_drift;
    bool failed = false;
    int failed_step = -1;              // integration step index of first violation
};

struct IntegrateOptions {
    double tol = 1e-8;     // drift tolerance for every monitor
    int store_stride = 1;  // keep every stride-th step (step 0 and the last always kept)
};

// Classical fixed-step RK4 on dL/dt = [L, P(L)]. All three conservation
// monitors are evaluated at every integration step against the initial
// state; the first violation marks the trajectory failed and stops it.
TodaTrajectory integrate(const PeriodicJacobi& L0, double t_end, double dt,
                         const IntegrateOptions& opts = {});

// If all |b_i| <= tol, the 1-based permutation sigma with a_i =
// reference[sigma(i) - 1] within tol; otherwise nullopt. The reference
// spectrum defaults to the sorted diagonal.
std::optional<std::vector<int>> classify_equilibrium(
    const PeriodicJacobi& L, double tol,
    const std::vector<double>& reference = {});

} // namespace isotoda::toda

#endif
