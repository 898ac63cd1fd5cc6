#pragma once

#include <stdexcept>
#include <string>

namespace ttalab {

// Base class for all library errors so callers can catch the whole family.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parameter is outside its documented domain.
struct OutOfRangeError : Error {
    using Error::Error;
};

/// Generic invalid generator / config parameters.
struct BadParamsError : Error {
    using Error::Error;
};

/// Sample vectors of unequal length where equal length is required.
struct LengthMismatchError : Error {
    using Error::Error;
};

/// A trajectory step exceeds the admissible per-step drift.
struct SingleStepViolationError : Error {
    using Error::Error;
};

/// The proxy optimum is not interior to the trust neighborhood.
struct NonInteriorError : Error {
    using Error::Error;
};

/// Learning rate is non-positive, non-finite, or otherwise unusable.
struct InvalidEtaError : Error {
    using Error::Error;
};

/// The prescribed learning rate exceeds its stability ceiling.
struct EtaTooLargeError : Error {
    using Error::Error;
};

/// Target excess error does not clear the quantization bridge.
struct BridgeInfeasibleError : Error {
    using Error::Error;
};

} // namespace ttalab
