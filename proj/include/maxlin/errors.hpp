#pragma once

#include <stdexcept>
#include <string>

namespace maxlin {

/// Base class for all recoverable errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument values: dimension mismatches, out-of-range nodes, invalid
/// distribution parameters, probabilities outside (0,1).
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// Edge lists that do not form a DAG (cycles, self-loops, duplicates).
class MalformedGraphError : public Error {
public:
    using Error::Error;
};

/// Data files or sample matrices violating format contracts
/// (non-positive values, header mismatch, ragged rows).
class MalformedDataError : public Error {
public:
    using Error::Error;
};

/// Operations that need more observations than were supplied.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Path enumeration exceeded its configured cap.
class TooManyPathsError : public Error {
public:
    using Error::Error;
};

} // namespace maxlin
