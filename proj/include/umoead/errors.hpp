#pragma once

#include <stdexcept>
#include <string>

namespace umoead {

// Invalid configuration: bad counts, malformed config files, size mismatches.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Requested capability is not defined for this problem (e.g. closed-form h).
class NotAvailableError : public std::runtime_error {
public:
    explicit NotAvailableError(const std::string& what) : std::runtime_error(what) {}
};

// A weight ray misses the known Pareto front.
class NoIntersectionError : public std::runtime_error {
public:
    explicit NoIntersectionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace umoead
