#pragma once

#include <stdexcept>
#include <string>

namespace csframe {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape / compatibility errors.
struct DimensionMismatch : Error { using Error::Error; };
struct DescriptorMismatch : Error { using Error::Error; };
struct SpaceMismatch : Error { using Error::Error; };

// Numerical-rank errors.
struct SingularElement : Error { using Error::Error; };
struct SingularOperator : Error { using Error::Error; };
struct NotInvertible : Error { using Error::Error; };

// Frame-level errors.
struct NotAFrame : Error { using Error::Error; };
struct TooManyAtoms : Error { using Error::Error; };

// Checker precondition errors; carry the name of the failing condition.
struct HypothesisViolated : Error { using Error::Error; };
struct SmallnessViolated : Error { using Error::Error; };

// Generator / toolkit errors.
struct UnsatisfiableRequest : Error { using Error::Error; };
struct HypothesisUnreachable : Error { using Error::Error; };
struct UnknownTheorem : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace csframe
