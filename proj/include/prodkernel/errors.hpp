#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prodkernel {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid kernel parameter or other argument constraint.
class ParameterError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// A requested object would exceed the configured size guard.
class ResourceError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Generic numerical failure (e.g. a squared norm that came out clearly negative).
class NumericalError : public Error {
public:
    using Error::Error;
};

class SingularError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Cholesky breakdown; `index()` is the 0-based pivot that failed.
class NotPositiveDefiniteError : public NumericalError {
public:
    NotPositiveDefiniteError(const std::string& what, std::size_t index)
        : NumericalError(what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Newton basis breakdown: the power function vanished at the new center.
class DegeneratePointError : public NumericalError {
public:
    DegeneratePointError(const std::string& what, std::size_t index)
        : NumericalError(what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class ExhaustedError : public Error {
public:
    using Error::Error;
};

}  // namespace prodkernel
