#pragma once

#include <stdexcept>
#include <string>

namespace carcass {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input / construction problems.
struct ParseError : Error { using Error::Error; };
struct NotUnimodalError : Error { using Error::Error; };
struct DuplicateAbscissaError : Error { using Error::Error; };
struct OutOfRangeError : Error { using Error::Error; };
struct OutOfDomainError : Error { using Error::Error; };
struct NotHomeomorphismError : Error { using Error::Error; };
struct NonDyadicKinkError : Error { using Error::Error; };

// Missing preconditions.
struct NotFirmError : Error { using Error::Error; };
struct NotFirmWithinBoundError : Error {
    NotFirmWithinBoundError(std::string kink, unsigned bound, std::string msg)
        : Error(std::move(msg)), kink(std::move(kink)), bound(bound) {}
    std::string kink;
    unsigned bound;
};
struct LevelMissingError : Error { using Error::Error; };
struct DepthCapExceededError : Error { using Error::Error; };

// Bad arguments to otherwise valid objects.
struct IndexOutOfRangeError : Error { using Error::Error; };
struct BitsTooShortError : Error { using Error::Error; };
struct BitsExhaustedError : Error { using Error::Error; };
struct WindowOutOfRangeError : Error { using Error::Error; };
struct SideUnavailableError : Error { using Error::Error; };
struct TOnBoundaryError : Error { using Error::Error; };

// Analysis could not reach a verdict.
struct InconclusiveError : Error { using Error::Error; };

// An exact identity the library relies on failed; always a bug.
struct InternalCheckError : Error { using Error::Error; };

}  // namespace carcass
