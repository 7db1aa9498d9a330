#pragma once

#include <stdexcept>
#include <string>

namespace gls {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input values, failed validation, points outside domains.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed files or identifier strings.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A configured cap was exceeded (search caps, combinatorial caps,
/// precision bit caps).
class ResourceCapError : public Error {
public:
    using Error::Error;
};

/// A digit stream ran past the last verified cutoff of a fixed schedule.
class ScheduleExhausted : public DomainError {
public:
    using DomainError::DomainError;
};

/// An approximate point straddles a branch boundary at the current radius.
class AmbiguousPoint : public Error {
public:
    using Error::Error;
};

} // namespace gls
