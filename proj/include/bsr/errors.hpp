#pragma once

#include <stdexcept>
#include <string>

namespace bsr {

/// A character sum collapsed to (near) zero where the theory forbids it,
/// i.e. L(1, chi) would vanish. Signals a bug or a loss of precision.
class NumericalDegeneracy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested modulus exceeds the configured cost guard of a
/// quadratic-time (or otherwise expensive) routine.
class CostGuardExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two independent computations of the same quantity disagree beyond
/// their combined error budget.
class VerificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// On-disk data (CSV or manifest) does not match the expected schema.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bsr
