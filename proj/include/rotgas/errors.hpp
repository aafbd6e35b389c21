#pragma once

#include <stdexcept>
#include <string>

namespace rotgas {

// Thrown when an adaptive quadrature cannot reach the requested tolerance.
// Carries the best estimate achieved so callers can decide whether to accept.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double value, double achieved_error)
        : std::runtime_error(what + " (value=" + std::to_string(value) +
                             ", achieved_error=" + std::to_string(achieved_error) + ")"),
          value_(value),
          achieved_error_(achieved_error) {}

    double value() const noexcept { return value_; }
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double value_;
    double achieved_error_;
};

} // namespace rotgas
