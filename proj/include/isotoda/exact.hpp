#ifndef ISOTODA_EXACT_HPP
#define ISOTODA_EXACT_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "isotoda/errors.hpp"

namespace isotoda {

// Exact integer arithmetic for the combinatorial modules. Face and h-numbers
// exceed 64 bits well before the documented cap of n = 20, so everything is
// carried in 128-bit integers and narrowed only at the API edge.
using int128 = __int128;

std::string to_string(int128 v);

inline std::int64_t to_int64_checked(int128 v) {
    if (v > int128(std::numeric_limits<std::int64_t>::max()) ||
        v < int128(std::numeric_limits<std::int64_t>::min()))
        throw numeric_error("integer value " + to_string(v) + " exceeds 64-bit range");
    return static_cast<std::int64_t>(v);
}

inline bool fits_int64(int128 v) {
    return v <= int128(std::numeric_limits<std::int64_t>::max()) &&
           v >= int128(std::numeric_limits<std::int64_t>::min());
}

int128 factorial(int n);
int128 binomial(int n, int k);

// Integer polynomials in one variable t, coefficients ascending.
using IntPoly = std::vector<int128>;

IntPoly ipoly_add(const IntPoly& a, const IntPoly& b);
IntPoly ipoly_sub(const IntPoly& a, const IntPoly& b);
IntPoly ipoly_mul(const IntPoly& a, const IntPoly& b);
IntPoly ipoly_binom_power(int n);          // (1+t)^n
int128 ipoly_eval(const IntPoly& p, int128 x);
void ipoly_trim(IntPoly& p);

} // namespace isotoda

#endif
