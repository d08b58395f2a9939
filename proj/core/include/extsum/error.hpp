#pragma once

#include <stdexcept>
#include <string>

namespace extsum {

/// Violated precondition on an argument (bad dimension, out-of-range angle, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation would exceed its explicit work budget, or a randomized
/// construction gave up after exhausting its attempts.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File or stream failure.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw PreconditionError(message);
    }
}
}  // namespace detail

}  // namespace extsum
