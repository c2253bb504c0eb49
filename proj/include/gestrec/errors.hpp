#pragma once
#include <stdexcept>
#include <string>

namespace gestrec {

// Bad arguments or violated call preconditions (wrong colorspace, size mismatch, ...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Unparsable input files (PNM, CSV database, JSON config).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed input that carries nothing usable. Pipeline stages raise a
// subtype; the CLI maps this family to exit code 3.
struct ContentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateInputError : ContentError {
    using ContentError::ContentError;
};

struct NoHandError : ContentError {
    using ContentError::ContentError;
};

struct NoMotionError : ContentError {
    using ContentError::ContentError;
};

// Contour is not a closed loop.
struct ContourError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Control-link message violates the one-hot line grammar.
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Control-link connect / read / write failure.
struct TransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gestrec
