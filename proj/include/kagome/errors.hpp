// errors.hpp
// Error taxonomy shared across the library and mapped to process exit codes
// by the C API / CLI: usage-or-IO (1), validation (2), infeasible certificate
// systems are reported as return values rather than exceptions (3 at the CLI),
// budget exhaustion (4).

#pragma once

#include <stdexcept>
#include <string>

namespace kagome {

// Input violates a documented precondition or invariant (exit code 2).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A computation exceeded its configured budget (region size, recursion depth,
// iteration count, memo size...).  Exit code 4.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kagome
