#pragma once

#include <stdexcept>
#include <string>

namespace lindyn {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A weight evaluated to a non-positive or non-finite value.
struct invalid_weight_error : error {
    using error::error;
};

/// Malformed caller input (overlapping intervals, non-positive table entries, ...).
struct invalid_input_error : error {
    using error::error;
};

/// Requested dyadic resolution exceeds what the sampled data can support.
struct resolution_error : error {
    using error::error;
};

/// Operation requires a step-normalized weight (rho(x) == rho(floor(x))).
struct normalization_error : error {
    using error::error;
};

/// Data does not fit in the requested window; the window must be extended.
struct window_error : error {
    using error::error;
};

/// Frequency-set generation is infeasible with the given parameters.
struct generation_error : error {
    using error::error;
};

/// Horizon too small to materialize a required prefix.
struct horizon_error : error {
    using error::error;
};

/// Internal contradiction detected (e.g. one index assigned two values),
/// signalling violated hypotheses in the supplied operator family.
struct inconsistency_error : error {
    using error::error;
};

/// A precondition of the requested check fails on the sampled data.
struct hypothesis_error : error {
    using error::error;
};

/// Bad or incomplete experiment configuration.
struct config_error : error {
    using error::error;
};

} // namespace lindyn
