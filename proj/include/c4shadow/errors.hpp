#pragma once

#include <stdexcept>
#include <string>

namespace c4s {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched qubit counts or out-of-range indices.
struct DimensionError : Error {
    using Error::Error;
};

// Requested size exceeds a configured limit (dense-matrix cap, branch cap).
struct CapacityError : Error {
    using Error::Error;
};

// Malformed input text; carries a 1-based line number when known.
struct ParseError : Error {
    int line = 0;
    ParseError(const std::string& msg, int line_no = 0)
        : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

// Observable or state outside what the chosen method supports.
struct UnsupportedError : Error {
    using Error::Error;
};

// Bad configuration (unknown key, invalid combination, unresolvable path).
struct ConfigError : Error {
    using Error::Error;
};

// Failure while simulating shots.
struct SimulationError : Error {
    using Error::Error;
};

// Failure while estimating or bootstrapping.
struct EstimationError : Error {
    using Error::Error;
};

}  // namespace c4s
