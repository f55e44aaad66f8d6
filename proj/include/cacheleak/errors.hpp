#pragma once

#include <stdexcept>
#include <string>

namespace cacheleak {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input documents (state-set files, count files).
struct ParseError : Error {
    using Error::Error;
};

// A computed or imported value broke a model invariant.
struct InvariantError : Error {
    using Error::Error;
};

// Invalid configuration or arguments (bad associativity, unknown block, ...).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace cacheleak
