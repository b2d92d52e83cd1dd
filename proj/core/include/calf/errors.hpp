// errors.hpp -- exception taxonomy shared by the whole toolkit.

#pragma once

#include <stdexcept>
#include <string>

namespace calf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments or values: unknown symbols, size bounds, mismatched alphabets.
struct InputError : Error {
    using Error::Error;
};

// Malformed automaton files or word lists. Carries the offending line.
struct FormatError : Error {
    FormatError(const std::string& what, int line_number)
        : Error(what + " (line " + std::to_string(line_number) + ")"), line(line_number) {}
    int line;
};

// An operation was invoked on a structure that does not satisfy its
// preconditions, e.g. extracting a hypothesis from a defective table.
struct PreconditionError : Error {
    using Error::Error;
};

// Wire-level oracle failures: malformed replies, timeouts, disconnects.
struct TransportError : Error {
    using Error::Error;
};

// Failed handshake with a remote oracle.
struct SetupError : Error {
    using Error::Error;
};

// A property the algorithms guarantee was observed to fail at runtime,
// e.g. a claimed counterexample that does not distinguish anything.
struct InvariantError : Error {
    using Error::Error;
};

}  // namespace calf
