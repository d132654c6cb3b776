#pragma once

#include <stdexcept>
#include <string>

namespace majed {

// Exception hierarchy mirrored one-to-one by the C API status codes.

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the operation's domain (bad N, bad site, overlapping regions...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Requested object would exceed a configured size or memory cap.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Iterative solver hit its iteration cap. The best-so-far result is kept by the thrower.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A quantity that must be nonnegative/normalized came out clearly wrong.
class NumericalIntegrityError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

class DegenerateCrossingError : public Error {
public:
    using Error::Error;
};

}  // namespace majed
