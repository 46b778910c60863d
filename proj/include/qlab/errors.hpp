#pragma once

#include <stdexcept>
#include <string>

namespace qlab {

// Thrown when a computation would exceed the configured entry-count or
// bit-size ceiling.  Carries whatever partial counts were known at the time
// in the message; nothing is silently truncated.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qlab
