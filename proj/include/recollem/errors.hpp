#pragma once

#include <stdexcept>
#include <string>

namespace recollem {

// Error taxonomy.  Input-side problems (schema, lookup, shape, precondition,
// state) are kept apart from arithmetic failures, step-limit overruns and
// internal consistency violations so callers (and the CLI exit-code mapping)
// can tell user error from library bug.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed serialized input: missing keys, wrong JSON types, bad scalars.
struct SchemaError : Error {
    using Error::Error;
};

// Reference to an object / basis index that does not exist.
struct LookupError : Error {
    using Error::Error;
};

// Dimension mismatch between matrices, reps, or category data.
struct ShapeError : Error {
    using Error::Error;
};

// Division by zero, characteristic mismatch, non-prime modulus.
struct ArithmeticError : Error {
    using Error::Error;
};

// Operation invoked outside its documented contract.
struct PreconditionError : Error {
    using Error::Error;
};

// Operation invoked before a required earlier step (e.g. a membership test
// that is only meaningful once the enabling property has been verified).
struct StateError : Error {
    using Error::Error;
};

// A configured step / length cap was exceeded (resolution length, fixpoint
// iteration count, matrix entry budget).
struct LimitError : Error {
    using Error::Error;
};

// An internal invariant failed; indicates a bug in this library, never bad
// user input.
struct ConsistencyError : Error {
    using Error::Error;
};

}  // namespace recollem
