#pragma once

#include <stdexcept>
#include <string>

namespace virasoro {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside the validity region of an operation (truncation mismatch,
// |q| or |z| beyond the evaluation domain, non-invertible divisor, ...).
struct DomainError : Error {
    using Error::Error;
};

// Evaluation exactly on a pole (z = 0 for P_k, coincident points for K).
struct PoleError : Error {
    using Error::Error;
};

// A point configuration with coincident (or nearly coincident) entries.
struct DegenerateConfiguration : Error {
    using Error::Error;
};

// n above the guarded enumeration bound and no override was given.
struct LimitError : Error {
    using Error::Error;
};

} // namespace virasoro
