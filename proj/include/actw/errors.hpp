#ifndef ACTW_ERRORS_HPP
#define ACTW_ERRORS_HPP

#include <stdexcept>

namespace actw {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numeric argument or configuration value is outside its legal range.
struct ParamError : Error {
    using Error::Error;
};

// A container or manifest is malformed: bad magic, version or field range.
struct FormatError : Error {
    using Error::Error;
};

// A compressed stream ended before every coded bit was resolved.
struct TruncationError : Error {
    using Error::Error;
};

// File-system level failure.
struct IoError : Error {
    using Error::Error;
};

}  // namespace actw

#endif  // ACTW_ERRORS_HPP
