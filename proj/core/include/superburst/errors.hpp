#pragma once

#include <stdexcept>
#include <string>

namespace superburst {

// Invalid user-supplied configuration (bad key, out-of-range value, bad unit).
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Mathematically undefined request: zero linewidth, absent branch, empty input.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Caller broke a documented precondition (dimension mismatch, non-steady input).
class ContractViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// Numerical degradation detected in an otherwise valid computation.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IntegrationError : public std::runtime_error {
  public:
    IntegrationError(const std::string& what, double time)
        : std::runtime_error(what + " at t=" + std::to_string(time) + " s"), time_(time) {}

    [[nodiscard]] double time() const noexcept { return time_; }

  private:
    double time_;
};

}  // namespace superburst
