#pragma once

#include <stdexcept>
#include <string>

namespace fairucbe {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// T < 2: the hyperparameter formulas need log T > 0.
struct invalid_horizon_error : error {
    using error::error;
};

// The (epsilon, alpha, kappa) inequality system is violated or admits no solution.
struct constraint_error : error {
    using error::error;
};

struct invalid_reward_error : error {
    using error::error;
};

// A confidence radius was requested for an arm with zero samples.
struct no_samples_error : error {
    using error::error;
};

struct empty_trace_error : error {
    using error::error;
};

struct config_error : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

} // namespace fairucbe
