#pragma once

#include <stdexcept>
#include <string>

namespace qdense {

/// Thrown by classification operations that require det != 0.
class SingularFormError : public std::domain_error {
public:
    explicit SingularFormError(const std::string& msg) : std::domain_error(msg) {}
};

/// Thrown when an enumeration box yields no nonzero value, so no quotient exists.
class EmptyQuotientSetError : public std::runtime_error {
public:
    explicit EmptyQuotientSetError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a requested enumeration exceeds the configured evaluation budget.
class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qdense
