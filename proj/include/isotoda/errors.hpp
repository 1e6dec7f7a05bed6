#ifndef ISOTODA_ERRORS_HPP
#define ISOTODA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace isotoda {

// Malformed or out-of-contract input (bad JSON, non-ascending spectrum, ...).
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to converge or lost too much accuracy.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation that requires all b_i != 0 was handed a matrix on the
// degenerate locus.
struct degenerate_locus_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A combinatorial size cap (n! growth) was exceeded.
struct cap_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace isotoda

#endif
