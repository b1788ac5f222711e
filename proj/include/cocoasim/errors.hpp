#pragma once

#include <stdexcept>
#include <string>

namespace cocoasim {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An argument lies outside the mathematical domain of an operation
/// (e.g. a yield multiplier below 1, degenerate elasticities).
class domain_error : public error {
public:
    explicit domain_error(const std::string& msg) : error(msg) {}
};

/// Input data violates a schema or a type invariant. Messages name the
/// offending row/column where that context exists.
class validation_error : public error {
public:
    explicit validation_error(const std::string& msg) : error(msg) {}
};

/// A scenario or configuration is internally inconsistent
/// (e.g. a profile country with no yield multiplier assigned).
class config_error : public error {
public:
    explicit config_error(const std::string& msg) : error(msg) {}
};

} // namespace cocoasim
