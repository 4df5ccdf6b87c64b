// Error types shared across the library. Numeric failures are reported as
// exceptions so that sweep drivers can record them per work item.
#ifndef CIRCINV_ERRORS_HPP
#define CIRCINV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace circinv {

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RootOnCircle : NumericError {
    using NumericError::NumericError;
};
struct NotPositive : NumericError {
    using NumericError::NumericError;
};
struct NoConvergence : NumericError {
    using NumericError::NumericError;
};
struct PoleAtIndex : NumericError {
    using NumericError::NumericError;
};
struct TruncationTooShort : NumericError {
    using NumericError::NumericError;
};
struct NotPositiveDefinite : NumericError {
    using NumericError::NumericError;
};
struct SingularMatrix : NumericError {
    using NumericError::NumericError;
};
struct IndexOutOfRange : NumericError {
    using NumericError::NumericError;
};
struct QuadratureFailure : NumericError {
    using NumericError::NumericError;
};
struct SeriesDiverging : NumericError {
    using NumericError::NumericError;
};
struct TruncationTooSmall : NumericError {
    using NumericError::NumericError;
};
struct DiagonalSingularity : NumericError {
    using NumericError::NumericError;
};
struct DomainError : NumericError {
    using NumericError::NumericError;
};
struct DegenerateZeros : NumericError {
    using NumericError::NumericError;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace circinv

#endif
