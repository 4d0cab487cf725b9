#pragma once

#include <stdexcept>
#include <string>

namespace slices {

// Thrown when an exact enumeration would exceed its point budget.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace slices
