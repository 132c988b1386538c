#pragma once

#include <stdexcept>
#include <string>

namespace gmfuse {

// Wrong number of inputs for an operation (empty vector, length mismatch,
// combiner arity below 2, ...).
class ArityError : public std::invalid_argument {
public:
    explicit ArityError(const std::string& what) : std::invalid_argument(what) {}
};

// Bad configuration: unknown combiner name, invalid fold count, malformed
// config file. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent data: unparseable CSV rows, score rows that do
// not sum to 1, schema mismatches. Maps to CLI exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Object used before it was put into a valid state (e.g. predicting with an
// unfitted classifier).
class StateError : public std::logic_error {
public:
    explicit StateError(const std::string& what) : std::logic_error(what) {}
};

} // namespace gmfuse
