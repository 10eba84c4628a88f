#include "fairucbe/hyperparams.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fairucbe {

namespace {

const double kLog18over11 = std::log(18.0 / 11.0);

[[noreturn]] void fail_constraint(const std::string& what) {
    throw constraint_error("hyperparameter constraint violated: " + what);
}

} // namespace

double epsilon_floor(double T) {
    if (!(T >= 2.0)) {
        throw invalid_horizon_error("epsilon_floor requires T >= 2");
    }
    const double log_t = std::log(T);
    return std::log(log_t / (2.0 * kLog18over11)) / log_t;
}

double alpha_ceiling(double epsilon, double kappa) {
    return std::min({2.0 - std::sqrt(2.0 * epsilon + 1.0), (kappa - epsilon) / 2.0, 1.0});
}

void validate_hyperparams(const Hyperparams& hp) {
    if (hp.horizon_T < 2) {
        throw invalid_horizon_error("horizon T must be at least 2");
    }
    if (hp.num_arms < 2) {
        fail_constraint("num_arms k must be at least 2");
    }
    if (!(hp.kappa > 0.0)) {
        fail_constraint("kappa must be positive");
    }
    const double floor = epsilon_floor(static_cast<double>(hp.horizon_T));
    if (!(hp.epsilon > floor)) {
        std::ostringstream os;
        os << "epsilon " << hp.epsilon << " must exceed (1/log T) log(log T / (2 log(18/11))) = "
           << floor;
        fail_constraint(os.str());
    }
    if (!(hp.epsilon > 0.0 && hp.epsilon < 1.0)) {
        fail_constraint("epsilon must lie in (0, 1)");
    }
    const double ceiling = alpha_ceiling(hp.epsilon, hp.kappa);
    if (!(hp.alpha > 0.0)) {
        fail_constraint("alpha must be positive");
    }
    if (!(hp.alpha < ceiling)) {
        std::ostringstream os;
        os << "alpha " << hp.alpha
           << " must be below min{2 - sqrt(2 eps + 1), (kappa - eps)/2, 1} = " << ceiling;
        fail_constraint(os.str());
    }
    if (!(hp.kappa > 2.0 * hp.alpha + hp.epsilon)) {
        fail_constraint("kappa must exceed 2 alpha + epsilon");
    }
    if (!(hp.delta1 > 0.0 && hp.delta1 <= 1.0)) {
        fail_constraint("delta1 must lie in (0, 1]");
    }
    if (!(hp.delta2 > 0.0 && hp.delta2 <= 1.0)) {
        fail_constraint("delta2 must lie in (0, 1]");
    }
    if (!(hp.explore_prob > 0.0 && hp.explore_prob <= 1.0)) {
        fail_constraint("explore_prob must lie in (0, 1]");
    }
}

Hyperparams derive_hyperparams(std::int64_t T, double kappa, int k,
                               std::optional<double> epsilon_override,
                               std::optional<double> alpha_override,
                               std::optional<double> delta2_override) {
    if (T < 2) {
        throw invalid_horizon_error("derive_hyperparams requires T >= 2");
    }
    if (k < 2) {
        throw constraint_error("derive_hyperparams requires k >= 2");
    }
    if (!(kappa > 0.0)) {
        throw constraint_error("derive_hyperparams requires kappa > 0");
    }

    Hyperparams hp;
    hp.horizon_T = T;
    hp.kappa = kappa;
    hp.num_arms = k;

    const double floor = epsilon_floor(static_cast<double>(T));
    hp.epsilon = epsilon_override.value_or(std::max(floor * (1.0 + 1e-3), 1e-6));

    const double ceiling = alpha_ceiling(hp.epsilon, kappa);
    if (!(ceiling > 0.0)) {
        std::ostringstream os;
        os << "no valid alpha exists: min{2 - sqrt(2 eps + 1), (kappa - eps)/2, 1} = " << ceiling
           << " <= 0 for epsilon = " << hp.epsilon << ", kappa = " << kappa;
        throw constraint_error(os.str());
    }
    hp.alpha = alpha_override.value_or(0.99 * ceiling);

    const double t_pow = std::pow(static_cast<double>(T), -hp.alpha / 2.0);
    hp.delta1 = t_pow;
    hp.explore_prob = t_pow;
    hp.delta2 = delta2_override.value_or(t_pow);
    hp.sufficiency_M =
        std::pow(static_cast<double>(T), (hp.alpha / 2.0 + hp.epsilon) / (1.0 - hp.alpha));

    validate_hyperparams(hp);
    return hp;
}

} // namespace fairucbe
