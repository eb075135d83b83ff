#pragma once

#include <stdexcept>
#include <string>

namespace gdnc {

/// Raised when an exact computation would exceed its configured
/// enumeration budget. Callers should fall back to Monte Carlo or a
/// cheaper method; the CLI maps this to exit code 3.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid user-supplied configuration or arguments; CLI exit code 2.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace gdnc
