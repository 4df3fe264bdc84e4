#pragma once

#include <stdexcept>
#include <string>

namespace tempground {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or out-of-range configuration value. The message names the field.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed file contents (TAGF payloads, manifests, reports).
class FormatError : public Error {
public:
    using Error::Error;
};

/// Inconsistent shapes, indices or values passed to an operation.
class InvalidInput : public Error {
public:
    using Error::Error;
};

} // namespace tempground
