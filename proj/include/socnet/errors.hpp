#pragma once

#include <stdexcept>
#include <string>

namespace socnet {

/// Bad or inconsistent input data (files, edge lists, persona sets).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration (demographic tables, backend settings).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Backend transport or protocol failure (HTTP errors, retry exhaustion).
class BackendError : public std::runtime_error {
public:
    explicit BackendError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace socnet
