#pragma once

#include <stdexcept>
#include <string>

namespace ghzkit {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input file / text format problems; message carries a line or field hint.
struct ParseError : Error {
    using Error::Error;
};

} // namespace ghzkit
