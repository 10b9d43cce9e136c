#pragma once

#include <stdexcept>
#include <string>

namespace dpc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An exhaustive enumeration or a randomized search ran out of its configured budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace dpc
