#pragma once

#include <stdexcept>
#include <string>

namespace psrep {

// Thrown when a requested floor value would not fit in the configured
// integer magnitude limit (default 2^63 - 1).
struct OverflowBeyondLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when the adaptive precision ladder reaches its cap without being
// able to separate the value from an integer.  In practice this signals an
// exactly-integer power (or an adversarially close one).
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfTableRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RangeTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SupportTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TableTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Phase function left its real domain, e.g. (T - t^c) <= 0.
struct PhaseDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A derived-parameter inequality failed; the message names it.
struct ConstraintViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace psrep
