#pragma once

#include <stdexcept>
#include <string>

namespace dn {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Exact-algebra failures.
struct NotDivisible : Error { using Error::Error; };
struct MalformedOperator : Error { using Error::Error; };
struct DegreeOverflow : Error { using Error::Error; };
struct SizeExceeded : Error { using Error::Error; };
struct SingularSolve : Error { using Error::Error; };
struct InexactInput : Error { using Error::Error; };
struct RepeatedSingularity : Error { using Error::Error; };

// Numeric failures.
struct DegenerateSpectrum : Error { using Error::Error; };
struct NullVector : Error { using Error::Error; };
struct NearSingularity : Error { using Error::Error; };
struct TruncationTooSmall : Error { using Error::Error; };
struct StepUnderflow : Error { using Error::Error; };
struct QuotientIllConditioned : Error { using Error::Error; };

// I/O failures.
struct ParseError : Error { using Error::Error; };
struct MalformedMatrix : Error { using Error::Error; };

}  // namespace dn
