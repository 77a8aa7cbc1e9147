#pragma once

#include <stdexcept>
#include <string>

namespace mwis {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad arguments: unknown node ids, parameters out of range.
struct InputError : Error {
    using Error::Error;
};

/// Malformed input files; message names the offending line.
struct ParseError : Error {
    using Error::Error;
};

/// A node program broke the one-message-per-edge-direction rule.
struct ProtocolError : Error {
    using Error::Error;
};

/// A supplied coloring/partition/outcome failed verification.
struct CertificateError : Error {
    using Error::Error;
};

/// A caller-asserted precondition (e.g. arboricity bound) does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

/// Feature intentionally not provided.
struct UnsupportedError : Error {
    using Error::Error;
};

/// Invariant violation that indicates a bug in this library.
struct InternalError : Error {
    using Error::Error;
};

} // namespace mwis
