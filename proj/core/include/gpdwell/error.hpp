#pragma once

#include <stdexcept>
#include <string>

namespace gpdwell {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violated a documented precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An iterative numerical method failed to reach its target accuracy.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace gpdwell
