#include "isotoda/exact.hpp"

#include <algorithm>

namespace isotoda {

std::string to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    // -2^127 negates fine through unsigned.
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v)
                              : static_cast<unsigned __int128>(v);
    std::string digits;
    while (u > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

int128 factorial(int n) {
    if (n < 0) throw validation_error("factorial of negative argument");
    if (n > 33) throw numeric_error("factorial overflows 128-bit range");
    int128 r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

int128 binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;  // divides exactly at every step
    }
    return r;
}

IntPoly ipoly_add(const IntPoly& a, const IntPoly& b) {
    IntPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    ipoly_trim(r);
    return r;
}

IntPoly ipoly_sub(const IntPoly& a, const IntPoly& b) {
    IntPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    ipoly_trim(r);
    return r;
}

IntPoly ipoly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    ipoly_trim(r);
    return r;
}

IntPoly ipoly_binom_power(int n) {
    IntPoly r(n + 1);
    for (int i = 0; i <= n; ++i) r[i] = binomial(n, i);
    return r;
}

int128 ipoly_eval(const IntPoly& p, int128 x) {
    int128 r = 0;
    for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

void ipoly_trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

} // namespace isotoda
