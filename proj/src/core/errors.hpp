#pragma once

#include <stdexcept>
#include <string>

namespace fracblow {

// Violated precondition or argument outside the mathematical domain.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// Requested tolerance could not be met within the given budget.
// Carries the best estimate obtained so far.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double best)
        : std::runtime_error(what), best_estimate(best) {}
    double best_estimate;
};

// Not enough usable data for a statistical fit.
class estimation_error : public std::runtime_error {
public:
    explicit estimation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fracblow
