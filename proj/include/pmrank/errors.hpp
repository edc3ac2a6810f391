#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmrank {

// Caller violated an operation contract (bad dimensions, mismatched moduli,
// out-of-range indices).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An exact division or truncation assumption did not hold.
class ExactnessError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Documented input precondition failed, e.g. a shift that does not dominate
// the row degrees. `row()` is 1-based, 0 when not row-specific.
class PreconditionError : public std::invalid_argument {
public:
    PreconditionError(const std::string& what, std::size_t row = 0)
        : std::invalid_argument(what), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

// Input exceeds a size guard of a desk-scale routine.
class CapabilityError : public std::length_error {
public:
    using std::length_error::length_error;
};

// An internal invariant failed. Always a bug, never a property of valid input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace pmrank

#define PMRANK_ENSURE(cond, msg)                                              \
    do {                                                                      \
        if (!(cond))                                                          \
            throw ::pmrank::InternalError(std::string(__func__) + ": " +      \
                                          (msg));                             \
    } while (0)
