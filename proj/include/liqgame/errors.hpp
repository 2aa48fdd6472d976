#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace liq {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or configuration (maps to exit code 2 in the CLI).
struct InvalidArgument : Error {
    using Error::Error;
};

/// Numeric failure: overflow, non-finite result, unmet stability (exit code 3).
struct NumericFailure : Error {
    using Error::Error;
};

/// Linear system judged unsolvable; carries the condition estimate that
/// tripped the threshold.
struct SingularMatrix : NumericFailure {
    SingularMatrix(const std::string& what, double cond)
        : NumericFailure(what), condition_estimate(cond) {}
    double condition_estimate;
};

/// Fixed-point iteration failed to converge; carries the residual history.
struct Divergence : NumericFailure {
    Divergence(const std::string& what, std::vector<double> history)
        : NumericFailure(what), residual_history(std::move(history)) {}
    std::vector<double> residual_history;
};

}  // namespace liq
