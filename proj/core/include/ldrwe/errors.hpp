#ifndef LDRWE_ERRORS_HPP
#define LDRWE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ldrwe {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A velocity was requested outside the relative interior of the step hull.
struct NotInRelativeInterior : Error {
    using Error::Error;
};

/// Newton iteration failed to reach tolerance within the iteration cap.
struct NonConvergence : Error {
    using Error::Error;
};

/// An operation that needs log-probabilities met a kernel with a zero entry.
struct ZeroProbabilityStep : Error {
    using Error::Error;
};

/// Tuple enumeration would exceed the enumeration cap.
struct CapExceeded : Error {
    using Error::Error;
};

/// Dynamic-programming state would exceed the cell budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

/// A conditioning window contains no reachable lattice endpoint.
struct EmptyWindow : Error {
    using Error::Error;
};

/// A time index beyond the sampled environment horizon was queried.
struct HorizonExceeded : Error {
    using Error::Error;
};

/// A Doob candidate function evaluated to a nonpositive value.
struct NonpositiveU : Error {
    using Error::Error;
};

/// Configuration parsing or validation failure; carries the offending field.
struct ConfigError : Error {
    std::string field;
    ConfigError(std::string field_, const std::string& what_)
        : Error("config field '" + field_ + "': " + what_), field(std::move(field_)) {}
};

} // namespace ldrwe

#endif // LDRWE_ERRORS_HPP
