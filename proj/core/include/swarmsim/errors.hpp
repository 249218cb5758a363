#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace swarmsim {

/// Raised when a descriptor or config violates one or more field rules.
/// Every violation found is collected, not just the first.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations);

    [[nodiscard]] const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Illegal capacity-slice lifecycle transition. The slice is left untouched.
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ClassificationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Kernel contract violation (e.g. scheduling in the past).
class KernelError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class CombinationOverflow : public std::runtime_error {
public:
    CombinationOverflow(double requested, std::size_t guard);

    [[nodiscard]] double requested() const noexcept { return requested_; }
    [[nodiscard]] std::size_t guard() const noexcept { return guard_; }

private:
    double requested_;
    std::size_t guard_;
};

/// No ranked offer could be confirmed; the application is rejected.
class DeploymentRejected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace swarmsim
