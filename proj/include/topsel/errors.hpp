#pragma once

#include <stdexcept>
#include <string>

namespace topsel {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (CSV rows, dates, config files).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Structurally valid input that violates a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A symbol does not have enough bars at or before the requested cutoff.
/// Distinct so callers can skip a stock or record a day as unconfirmable
/// instead of aborting.
class InsufficientHistoryError : public Error {
public:
    using Error::Error;
};

/// A decision-matrix column whose chosen normalization is undefined
/// (zero or non-positive denominator, constant column under max-min).
class DegenerateColumnError : public Error {
public:
    using Error::Error;
};

/// A constant price window: min-max normalization has a zero denominator.
class DegenerateWindowError : public Error {
public:
    using Error::Error;
};

} // namespace topsel
