#pragma once

#include <stdexcept>
#include <string>

namespace wittchar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (bad prime, reducible modulus,
/// non-unit where a 1-unit is required, malformed file, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed the configured element budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Requested precision cannot be represented or has been exhausted.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// A tail certificate (sequence schedule or series truncation bound) does not
/// cover the requested precision.
class TailError : public Error {
public:
    using Error::Error;
};

/// The operation is not defined for this ring (e.g. Witt multiplication over F_q).
class Unsupported : public Error {
public:
    using Error::Error;
};

}  // namespace wittchar
