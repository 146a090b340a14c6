#ifndef LOSSLAB_ERRORS_HPP
#define LOSSLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace losslab {

/// Base class for all losslab errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid system parameters or malformed input documents.
struct ValidationError : Error {
    using Error::Error;
};

/// A state-space, configuration-set, or pair-scan size exceeded its cap.
struct CapacityError : Error {
    using Error::Error;
};

/// An argument is outside the mathematical domain of the operation.
struct DomainError : Error {
    using Error::Error;
};

/// The iterative stationary solver did not reach the residual tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

/// A replay schedule contains negative times or durations.
struct ScheduleError : Error {
    using Error::Error;
};

/// An internal numerical consistency check failed (e.g. conservation laws).
struct NumericalError : Error {
    using Error::Error;
};

/// A coupled simulation left its admissible set. The coupling constructions
/// guarantee this cannot happen, so a throw indicates an implementation bug.
struct CouplingViolation : Error {
    CouplingViolation(const std::string& msg, double t) : Error(msg), time(t) {}
    double time;
};

} // namespace losslab

#endif
