#include "fairucbe/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fairucbe/errors.hpp"

namespace fairucbe {

double instantaneous_regret(const std::vector<double>& oracle_means, int chosen_arm) {
    const double best = *std::max_element(oracle_means.begin(), oracle_means.end());
    return best - oracle_means[static_cast<std::size_t>(chosen_arm)];
}

namespace {

const double kLog18over11 = std::log(18.0 / 11.0);

double bound_common(int k, std::int64_t T, double alpha, double log_constant) {
    const double td = static_cast<double>(T);
    return std::pow(static_cast<double>(k), 1.5) * std::pow(td, 1.0 - alpha / 2.0) *
           std::sqrt(std::log(log_constant * std::pow(td, 1.0 + alpha / 4.0)));
}

} // namespace

double regret_bound_B(int k, std::int64_t T, double alpha) {
    return bound_common(k, T, alpha, 1.0 / kLog18over11);
}

double regret_bound_B_theorem(int k, std::int64_t T, double alpha) {
    const double c = std::sqrt(k * std::numbers::pi * std::numbers::pi / 6.0);
    return bound_common(k, T, alpha, c);
}

bool fairness_audit(const std::vector<double>& probs, const std::vector<double>& oracle_means) {
    const std::size_t k = probs.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });

    // Walk groups of equal probability in descending order; a violation is a
    // strictly-higher-probability arm whose mean does not exceed some mean in
    // a later group.
    double min_mean_above = std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    while (i < k) {
        std::size_t j = i;
        double group_max_mean = -std::numeric_limits<double>::infinity();
        while (j < k && probs[order[j]] == probs[order[i]]) {
            group_max_mean = std::max(group_max_mean, oracle_means[order[j]]);
            ++j;
        }
        if (min_mean_above <= group_max_mean) return true;
        for (std::size_t g = i; g < j; ++g) {
            min_mean_above = std::min(min_mean_above, oracle_means[order[g]]);
        }
        i = j;
    }
    return false;
}

bool coverage_audit(const std::vector<ConfidenceInterval>& intervals,
                    const std::vector<double>& oracle_means) {
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (oracle_means[i] < intervals[i].lower_a || oracle_means[i] > intervals[i].upper_b) {
            return false;
        }
    }
    return true;
}

RunSummary summarize(const std::vector<StepRecord>& trace, double bound_B) {
    if (trace.empty()) {
        throw empty_trace_error("summarize requires a nonempty trace");
    }
    RunSummary s;
    s.bound_B = bound_B;
    s.cum_regret_curve.reserve(trace.size());
    s.ratio_curve.reserve(trace.size());
    double cum = 0.0;
    for (const auto& rec : trace) {
        cum += rec.inst_regret;
        s.cum_regret_curve.push_back(cum);
        s.ratio_curve.push_back(cum / bound_B);
        if (rec.fairness_violation) ++s.fairness_violation_count;
        if (rec.coverage_violation) ++s.coverage_violation_count;
    }
    s.any_fairness_violation = s.fairness_violation_count > 0;
    s.coverage_failure = s.coverage_violation_count > 0;
    s.final_regret = cum;
    s.max_ratio = *std::max_element(s.ratio_curve.begin(), s.ratio_curve.end());
    return s;
}

} // namespace fairucbe
