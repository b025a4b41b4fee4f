#pragma once

#include <stdexcept>
#include <string>

namespace gyrohap {

/// Bad user input: malformed config file, unknown key, invalid CSV schema.
/// Mapped to exit code 1 by the CLI.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure at run time: non-convergence, instability, singular
/// matrix. Mapped to exit code 2 by the CLI.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gyrohap
