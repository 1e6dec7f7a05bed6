#include "isotoda/toda.hpp"

#include <algorithm>
#include <cmath>

namespace isotoda::toda {

namespace {

Dense commutator(const Dense& A, const Dense& B) {
    const int n = static_cast<int>(A.size());
    Dense C(n, std::vector<cplx>(n, cplx(0.0, 0.0)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const cplx aik = A[i][k];
            const cplx bik = B[i][k];
            if (aik == cplx(0.0, 0.0) && bik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j)
                C[i][j] += aik * B[k][j] - bik * A[k][j];
        }
    return C;
}

double wrap_angle(double d) {
    while (d > M_PI) d -= 2.0 * M_PI;
    while (d < -M_PI) d += 2.0 * M_PI;
    return d;
}

struct Flat {
    std::vector<double> v;  // a_1..a_n, Re b_1, Im b_1, ..., Re b_n, Im b_n
};

Flat flatten(const PeriodicJacobi& L) {
    const int n = L.n();
    Flat f;
    f.v.resize(3 * n);
    for (int i = 0; i < n; ++i) f.v[i] = L.a[i];
    for (int i = 0; i < n; ++i) {
        f.v[n + 2 * i] = L.b[i].real();
        f.v[n + 2 * i + 1] = L.b[i].imag();
    }
    return f;
}

PeriodicJacobi unflatten(const Flat& f, int n) {
    std::vector<double> a(f.v.begin(), f.v.begin() + n);
    std::vector<cplx> b(n);
    for (int i = 0; i < n; ++i) b[i] = cplx(f.v[n + 2 * i], f.v[n + 2 * i + 1]);
    return PeriodicJacobi(std::move(a), std::move(b));
}

} // namespace

Dense lax_pair(const PeriodicJacobi& L) {
    const int n = L.n();
    Dense P(n, std::vector<cplx>(n, cplx(0.0, 0.0)));
    for (int i = 0; i + 1 < n; ++i) {
        P[i][i + 1] = L.b[i];
        P[i + 1][i] = -std::conj(L.b[i]);
    }
    P[n - 1][0] = L.b[n - 1];
    P[0][n - 1] = -std::conj(L.b[n - 1]);
    return P;
}

PeriodicJacobi vector_field(const PeriodicJacobi& L) {
    const int n = L.n();
    const Dense C = commutator(assemble(L), lax_pair(L));
    std::vector<double> da(n);
    std::vector<cplx> db(n);
    for (int i = 0; i < n; ++i) da[i] = C[i][i].real();
    for (int i = 0; i + 1 < n; ++i) db[i] = C[i][i + 1];
    db[n - 1] = C[n - 1][0];
    return PeriodicJacobi(std::move(da), std::move(db));
}

TodaTrajectory integrate(const PeriodicJacobi& L0, double t_end, double dt,
                         const IntegrateOptions& opts) {
    if (!(t_end > 0)) throw validation_error("integrate: t_end must be positive");
    if (!(dt > 0)) throw validation_error("integrate: dt must be positive");
    if (!(opts.tol > 0)) throw validation_error("integrate: tol must be positive");
    if (opts.store_stride < 1)
        throw validation_error("integrate: store_stride must be >= 1");

    const int n = L0.n();
    const std::vector<double> lambda0 = matrix::eigenvalues(L0);
    const double abs_b0 = std::abs(product_b(L0));
    std::vector<double> arg_b0(n);
    std::vector<bool> track_arg(n);
    for (int i = 0; i < n; ++i) {
        track_arg[i] = std::abs(L0.b[i]) > opts.tol;
        arg_b0[i] = track_arg[i] ? std::arg(L0.b[i]) : 0.0;
    }

    auto drift_of = [&](const PeriodicJacobi& L) {
        DriftRecord d;
        const std::vector<double> lam = matrix::eigenvalues(L);
        for (int i = 0; i < n; ++i)
            d.spectrum = std::max(d.spectrum, std::abs(lam[i] - lambda0[i]));
        d.abs_b = std::abs(std::abs(product_b(L)) - abs_b0);
        for (int i = 0; i < n; ++i) {
            if (!track_arg[i] || std::abs(L.b[i]) <= opts.tol) continue;
            d.arg_b = std::max(
                d.arg_b, std::abs(wrap_angle(std::arg(L.b[i]) - arg_b0[i])));
        }
        return d;
    };

    auto rhs = [n](const Flat& f) {
        return flatten(vector_field(unflatten(f, n)));
    };

    const long long steps = std::llround(std::ceil(t_end / dt - 1e-12));

    TodaTrajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(L0);
    traj.drifts.push_back(DriftRecord{});

    Flat y = flatten(L0);
    const size_t dim = y.v.size();
    double t = 0.0;

    for (long long step = 1; step <= steps; ++step) {
        const double h = std::min(dt, t_end - t);

        Flat k1 = rhs(y);
        Flat s2 = y;
        for (size_t i = 0; i < dim; ++i) s2.v[i] += 0.5 * h * k1.v[i];
        Flat k2 = rhs(s2);
        Flat s3 = y;
        for (size_t i = 0; i < dim; ++i) s3.v[i] += 0.5 * h * k2.v[i];
        Flat k3 = rhs(s3);
        Flat s4 = y;
        for (size_t i = 0; i < dim; ++i) s4.v[i] += h * k3.v[i];
        Flat k4 = rhs(s4);
        for (size_t i = 0; i < dim; ++i)
            y.v[i] += h / 6.0 * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
        t += h;

        const PeriodicJacobi state = unflatten(y, n);
        const DriftRecord d = drift_of(state);
        traj.max_drift.spectrum = std::max(traj.max_drift.spectrum, d.spectrum);
        traj.max_drift.abs_b = std::max(traj.max_drift.abs_b, d.abs_b);
        traj.max_drift.arg_b = std::max(traj.max_drift.arg_b, d.arg_b);

        const bool violated =
            d.spectrum > opts.tol || d.abs_b > opts.tol || d.arg_b > opts.tol;
        const bool last = step == steps;
        if (violated || last || step % opts.store_stride == 0) {
            traj.times.push_back(t);
            traj.states.push_back(state);
            traj.drifts.push_back(d);
        }
        if (violated) {
            traj.failed = true;
            traj.failed_step = static_cast<int>(step);
            break;
        }
    }
    return traj;
}

std::optional<std::vector<int>> classify_equilibrium(
    const PeriodicJacobi& L, double tol, const std::vector<double>& reference) {
    const int n = L.n();
    for (cplx v : L.b)
        if (std::abs(v) > tol) return std::nullopt;

    std::vector<double> ref = reference;
    if (ref.empty()) {
        ref = L.a;
        std::sort(ref.begin(), ref.end());
    }
    if (static_cast<int>(ref.size()) != n) return std::nullopt;

    std::vector<int> sigma(n, 0);
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
        int match = -1;
        double best = tol;
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double d = std::abs(L.a[i] - ref[j]);
            if (d <= best) {
                best = d;
                match = j;
            }
        }
        if (match < 0) return std::nullopt;
        used[match] = true;
        sigma[i] = match + 1;  // 1-based, as permutations are written
    }
    return sigma;
}

} // namespace isotoda::toda
