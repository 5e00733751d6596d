#ifndef HOSPT_ERRORS_HPP
#define HOSPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hospt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input files, flags, or parameter values. CLI exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

// API misuse detected at runtime (missing samples, flux without links, ...).
struct UsageError : Error {
    using Error::Error;
};

// Solver non-convergence, gap collapse, propagation failure. CLI exit code 3.
struct NumericalError : Error {
    using Error::Error;
};

// Wall-clock budget exceeded. CLI exit code 4.
struct BudgetError : Error {
    using Error::Error;
};

} // namespace hospt

#endif
