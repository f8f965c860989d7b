// =============================================================================
// errors.hpp - Error taxonomy.
//
//   ConfigError            - bad experiment configuration (CLI exits 2).
//   InternalError          - an internal consistency check failed, e.g. an
//                            operator produced mass that does not sum to 1.
//   UnsupportedSchemaError - an operation was asked for a selection schema
//                            it has no formula for.
//
// Domain violations of individual math operations (negative fitness, bound
// arguments outside their intervals) throw std::domain_error directly.
// =============================================================================
#pragma once

#include <stdexcept>
#include <string>

namespace edalab {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

class UnsupportedSchemaError : public std::invalid_argument {
public:
    explicit UnsupportedSchemaError(const std::string& what)
        : std::invalid_argument(what) {}
};

}  // namespace edalab
