#pragma once

#include <stdexcept>
#include <string>

namespace bregpnp {

/// Shapes of images, kernels or operators do not fit together.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A point lies outside the domain of a reference function (or of its conjugate gradient).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Inconsistent or unsupported configuration.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A solver run stopped because the positivity safeguard ran out of halvings.
class SolverAbort : public std::runtime_error {
public:
    explicit SolverAbort(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bregpnp
