#pragma once

#include <stdexcept>
#include <string>

namespace bh {

// Invalid numeric input (NaN, non-positive coordinate, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Result does not fit in a double.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

// Caller misuse: empty candidate family, node not in tree, bad n.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Adaptive quadrature ran out of subdivisions.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double estimate, std::string location = {})
        : std::runtime_error(what), estimate_(estimate), location_(std::move(location)) {}

    double estimate() const { return estimate_; }
    const std::string& location() const { return location_; }

    ConvergenceError with_location(const std::string& loc) const {
        return ConvergenceError(what(), estimate_, location_.empty() ? loc : loc + " / " + location_);
    }

private:
    double estimate_;
    std::string location_;
};

// Doubling search for the stopping threshold gave up.
class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bh
