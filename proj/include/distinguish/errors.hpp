#pragma once

#include <stdexcept>
#include <string>

namespace distinguish {

// Negative photon count, or a total photon number above the configured bound.
class InvalidOccupation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Mode-count or matrix-dimension mismatch between operands.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedScenario : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when a computed probability leaves [-1e-9, 1 + 1e-9]; always a bug
// upstream, never clamped away.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace distinguish
