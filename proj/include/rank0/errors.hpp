#pragma once

#include <stdexcept>
#include <string>

namespace rank0 {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Weierstrass model with vanishing discriminant.
struct SingularModelError : Error {
    using Error::Error;
};

// (m, n) does not satisfy the progression-pair conditions.
struct InvalidPairError : Error {
    using Error::Error;
};

// Point does not lie on the expected curve.
struct InvalidPointError : Error {
    using Error::Error;
};

// A local root number fell outside the supported rule table.
struct IndeterminateRootNumberError : Error {
    using Error::Error;
};

// Operation called outside its supported configuration.
struct UnsupportedConfigurationError : Error {
    using Error::Error;
};

// Argument outside the operation's domain (zero valuation input,
// even prime where odd is required, out-of-range integer, ...).
struct DomainError : Error {
    using Error::Error;
};

// An internal invariant that should be unconditionally true failed.
struct InternalConsistencyError : Error {
    using Error::Error;
};

}  // namespace rank0
