#pragma once

#include <stdexcept>
#include <string>

namespace pencillab {

/// Base class for every failure raised by the numerical modules.
///
/// Precondition violations on the caller's side (mismatched dimensions,
/// empty inputs) are reported with std::invalid_argument instead.
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Root finder or series did not reach its convergence criterion.
class NonConvergence : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

class Overflow : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

class NotUnipotent : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

class NotAnEigenvalue : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

// Eigenvalue clusters are too close to be separated reliably.
class IllConditioned : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

class TrackingAmbiguous : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

class AmbiguousMatching : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

class AmbiguousSeparation : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

class HypothesisViolated : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

}  // namespace pencillab
