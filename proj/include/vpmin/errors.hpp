#pragma once

#include <stdexcept>
#include <string>

namespace vpmin {

/// A density or parameter set violates a declared constraint (bad mass,
/// non-finite values, out-of-range exponents).  Maps to CLI exit code 3.
class constraint_error : public std::invalid_argument {
public:
    explicit constraint_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// An iteration failed to converge or a bracketing assumption broke down.
/// Maps to CLI exit code 2.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// The compact support of a solution reached the outermost grid node.
/// Callers retry with a doubled r_max (at most five times).
class grid_too_small_error : public numeric_error {
public:
    explicit grid_too_small_error(const std::string& msg) : numeric_error(msg) {}
};

} // namespace vpmin
