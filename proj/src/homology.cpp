#include "isotoda/homology.hpp"

#include <algorithm>

#include "isotoda/tiling.hpp"

namespace isotoda::homology {

namespace {

IntPoly h_numbers(int n) {
    const auto st = tiling::dual_poset_stats(n);
    return st.h;
}

// Diagonal entry of the bigraded collar table:
// h_p + C(n,p) sum_{k=2}^{p+1} (-1)^{p+k-1} C(n-1,k-1).
int128 diagonal_entry(const IntPoly& h, int n, int p) {
    int128 acc = 0;
    for (int k = 2; k <= p + 1; ++k) {
        const int128 term = binomial(n - 1, k - 1);
        acc += ((p + k - 1) % 2 == 0) ? term : -term;
    }
    return h[p] + binomial(n, p) * acc;
}

} // namespace

std::vector<int128> RationalSeries::expand(int terms) const {
    if (terms < 0) throw validation_error("expand: terms must be >= 0");
    std::vector<int128> out(terms, 0);
    for (int j = 0; j < terms; ++j) {
        // coefficient of t^j in numerator * sum_k C(k+d-1, d-1) t^{2k}
        int128 acc = 0;
        for (size_t i = 0; i < numerator.size(); ++i) {
            const int rem = j - static_cast<int>(i);
            if (rem < 0) break;
            if (rem % 2 != 0) continue;
            const int k = rem / 2;
            acc += numerator[i] * (denom_pow == 0
                                       ? int128(k == 0 ? 1 : 0)
                                       : binomial(k + denom_pow - 1, denom_pow - 1));
        }
        out[j] = acc;
    }
    return out;
}

RationalSeries equivariant_series_principal(int n) {
    if (n < 3) throw validation_error("equivariant series: n must be >= 3");
    const IntPoly h = h_numbers(n);
    RationalSeries s;
    s.numerator.assign(2 * n + 1, 0);
    for (int i = 0; i <= n; ++i) s.numerator[2 * i] = h[i];
    ipoly_trim(s.numerator);
    s.denom_pow = n - 1;
    return s;
}

std::vector<int128> equivariant_series_collar(int n, int terms) {
    if (terms < 1) throw validation_error("equivariant series: terms must be >= 1");
    std::vector<int128> out = equivariant_series_principal(n).expand(terms);
    // polynomial tail (1+t)^n - 1 - t
    for (int i = 0; i <= n && i < terms; ++i) out[i] += binomial(n, i);
    if (terms > 0) out[0] -= 1;
    if (terms > 1) out[1] -= 1;
    return out;
}

IntPoly full_space_remainder(int n) {
    if (n == 3) return IntPoly{0, 0, 2};  // 2t^2, the flag-manifold case
    return {};                            // undetermined for n >= 4
}

void validate_betti_params(int n, int n_plus, int n_minus) {
    if (n < 3) throw validation_error("betti: n must be >= 3");
    if (n_plus < 1 || n_minus < 1)
        throw validation_error("betti: n_plus and n_minus must be >= 1");
    if (n_plus + n_minus > n - 1)
        throw validation_error("betti: n_plus + n_minus must be <= n - 1");
}

BettiComponents betti_components(int n, int n_plus, int n_minus) {
    validate_betti_params(n, n_plus, n_minus);
    BettiComponents comp;

    comp.h_eq = ipoly_binom_power(2 * n - 1);

    // (1+t)^{2n-n_+-n_--2} (1 - t + t(1+t)^{n_+} + t(1+t)^{n_-})
    IntPoly inner{1, -1};
    IntPoly tail_plus = ipoly_binom_power(n_plus);
    IntPoly tail_minus = ipoly_binom_power(n_minus);
    tail_plus.insert(tail_plus.begin(), 0);
    tail_minus.insert(tail_minus.begin(), 0);
    inner = ipoly_add(inner, ipoly_add(tail_plus, tail_minus));
    comp.h_geq = ipoly_mul(ipoly_binom_power(2 * n - n_plus - n_minus - 2), inner);

    // Collar part: diagonal h-based terms plus the free off-diagonal block.
    const IntPoly h = h_numbers(n);
    IntPoly leq(2 * n, 0);
    for (int p = 0; p <= n - 1; ++p) leq[2 * p] += diagonal_entry(h, n, p);
    for (int p = 0; p <= n - 1; ++p)
        for (int q = 0; q < p; ++q)
            leq[p + q] += binomial(n - 1, p) * binomial(n, q);
    ipoly_trim(leq);
    comp.h_leq = std::move(leq);

    // The Upsilon enumeration: cycles of the boundary torus killed by both
    // inclusions.
    const int free_rank = n - 1 - n_plus - n_minus;
    IntPoly ker(3 * n, 0);
    for (int p = 0; p <= free_rank; ++p)
        for (int e = 0; e <= 1; ++e)
            for (int q = 0; q <= n_plus; ++q)
                for (int s = 0; s <= n_minus; ++s)
                    for (int r = 0; r <= n - 1; ++r) {
                        if (!(r + e > p + q + s)) continue;
                        const bool cond = (e == 0 && q + s > 0) ||
                                          (e == 1 && q > 0 && s > 0);
                        if (!cond) continue;
                        ker[p + e + q + s + r] +=
                            binomial(free_rank, p) * binomial(n_plus, q) *
                            binomial(n_minus, s) * binomial(n - 1, r);
                    }
    ipoly_trim(ker);
    comp.h_ker = std::move(ker);

    return comp;
}

BettiTable betti_table(int n, int n_plus, int n_minus) {
    const BettiComponents comp = betti_components(n, n_plus, n_minus);
    IntPoly total = ipoly_add(comp.h_geq, comp.h_leq);
    total = ipoly_sub(total, comp.h_eq);
    total = ipoly_add(total, ipoly_mul(IntPoly{1, 1}, comp.h_ker));

    if (static_cast<int>(total.size()) > 2 * n + 1)
        throw numeric_error("betti_table: degree exceeds 2n");
    total.resize(2 * n + 1, 0);

    BettiTable table;
    table.n = n;
    table.n_plus = n_plus;
    table.n_minus = n_minus;
    table.betti = std::move(total);
    return table;
}

DegenerateSplit most_degenerate_split(int n) {
    if (n < 4)
        throw validation_error(
            "most_degenerate_split: degeneration requires n >= 4 (at n = 3 the "
            "maximal split is the generic one)");
    return {(n - 1) / 2, n / 2};
}

std::vector<std::vector<int128>> collar_bigraded_betti(int n) {
    if (n < 3) throw validation_error("collar_bigraded_betti: n must be >= 3");
    const IntPoly h = h_numbers(n);
    std::vector<std::vector<int128>> table(n, std::vector<int128>(n + 1, 0));
    for (int p = 0; p <= n - 1; ++p) {
        for (int q = 0; q <= n; ++q) {
            if (q > p) continue;
            if (q == p)
                table[p][q] = diagonal_entry(h, n, p);
            else
                table[p][q] = binomial(n - 1, p) * binomial(n, q);
        }
    }
    return table;
}

Diagnostics diagnostics(int n, int n_plus, int n_minus) {
    const BettiTable table = betti_table(n, n_plus, n_minus);
    Diagnostics d;
    d.pi1_rank = n - 1 - n_plus - n_minus;
    for (size_t i = 0; i < table.betti.size(); ++i) {
        d.euler += (i % 2 == 0) ? table.betti[i] : -table.betti[i];
        if (i % 2 == 1) d.odd_betti_total += table.betti[i];
    }
    d.equivariantly_formal = d.odd_betti_total == 0;

    // (1 + t^2 ((1+t)^{n_+} - 1)((1+t)^{n_-} - 1)) (1+t)^{n-1-n_+-n_-}
    IntPoly plus = ipoly_sub(ipoly_binom_power(n_plus), IntPoly{1});
    IntPoly minus = ipoly_sub(ipoly_binom_power(n_minus), IntPoly{1});
    IntPoly joint = ipoly_mul(plus, minus);
    joint.insert(joint.begin(), 2, 0);  // * t^2
    joint = ipoly_add(IntPoly{1}, joint);
    d.orbit_poincare = ipoly_mul(joint, ipoly_binom_power(d.pi1_rank));
    return d;
}

} // namespace isotoda::homology
