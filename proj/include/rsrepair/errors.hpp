#pragma once

#include <stdexcept>
#include <string>

namespace rsrepair {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// field
struct NotPrime : Error { using Error::Error; };
struct EvenModulus : Error { using Error::Error; };
struct ZeroInverse : Error { using Error::Error; };
struct DuplicateAbscissa : Error { using Error::Error; };

// partition
struct ZeroStep : Error { using Error::Error; };
struct WidthOutOfRange : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };

// schemes
struct BadIndex : Error { using Error::Error; };
struct BadBitBudget : Error { using Error::Error; };
struct InadmissibleDimension : Error { using Error::Error; };
struct NoAdmissibleDimension : Error { using Error::Error; };
struct DegreeTooHigh : Error { using Error::Error; };

// reconstruct
struct InconsistentTranscript : Error { using Error::Error; };
struct AmbiguousRepair : Error { using Error::Error; };
struct AmbiguousDecoding : Error { using Error::Error; };

// verify
struct SearchBudgetExceeded : Error { using Error::Error; };

/// Thrown by random_scheme_search when no sampled family is injective.
/// Carries the observed success rate and the union-bound prediction so the
/// caller can still report them.
struct NoInjectiveFamilyFound : Error {
    NoInjectiveFamilyFound(const std::string& msg, double rate_, double bound_)
        : Error(msg), rate(rate_), bound(bound_) {}
    double rate;
    double bound;
};

// expsums
struct ConstantPolynomial : Error { using Error::Error; };
struct ZeroNumerator : Error { using Error::Error; };
struct RangeTooLong : Error { using Error::Error; };
struct WindowViolation : Error { using Error::Error; };

// io / cli
struct ParseError : Error { using Error::Error; };
struct UnverifiedInstance : Error { using Error::Error; };

} // namespace rsrepair
