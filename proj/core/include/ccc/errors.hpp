#pragma once

#include <stdexcept>
#include <string>

namespace ccc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A caller broke a precondition (bad size, unknown node, forbidden loop, ...).
struct InvalidArgument : Error {
    using Error::Error;
};

/// A file or byte stream does not match its declared format.
struct FormatError : Error {
    using Error::Error;
};

/// A payload does not fit the carrier (or s exceeds the community).
struct CapacityError : Error {
    using Error::Error;
};

/// Key material, bundle contents, or carrier data failed validation.
struct ValidationError : Error {
    using Error::Error;
};

} // namespace ccc
