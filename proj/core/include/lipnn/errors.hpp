#ifndef LIPNN_ERRORS_HPP
#define LIPNN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lipnn {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

/// Thrown when a Cholesky pivot falls below the acceptance margin. For the
/// dense routine `index` is the failing pivot (row), for the blocked routine
/// it is the failing diagonal block.
struct NotPositiveDefinite : Error {
    std::ptrdiff_t index;
    NotPositiveDefinite(const std::string& msg, std::ptrdiff_t idx)
        : Error(msg), index(idx) {}
};

struct NonConvergence : Error {
    using Error::Error;
};

struct InvalidLabel : Error {
    using Error::Error;
};

struct InfeasiblePoint : Error {
    using Error::Error;
};

struct InitFailure : Error {
    using Error::Error;
};

struct DataError : Error {
    using Error::Error;
};

struct ParseError : Error {
    long line;
    ParseError(const std::string& msg, long line_no) : Error(msg), line(line_no) {}
};

struct DimensionError : Error {
    using Error::Error;
};

struct BadMagic : Error {
    using Error::Error;
};

struct TruncatedFile : Error {
    using Error::Error;
};

struct VersionMismatch : Error {
    using Error::Error;
};

}  // namespace lipnn

#endif
