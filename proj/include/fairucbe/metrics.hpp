#pragma once

#include <cstdint>
#include <vector>

#include "fairucbe/policy.hpp"

namespace fairucbe {

/// Per-timestep audit record. Intervals and oracle means are kept only when
/// the run was asked to retain them (two-arm tracking plots need both).
struct StepRecord {
    std::int64_t t = 0;
    int chosen_arm = 0;
    double reward = 0.0;
    bool explored = false;
    int active_set_size = 0;
    double inst_regret = 0.0;
    bool fairness_violation = false;
    bool coverage_violation = false;
    std::vector<ConfidenceInterval> intervals; // optional detail
    std::vector<double> oracle_means;          // optional detail
};

struct RunSummary {
    std::vector<double> cum_regret_curve;
    double bound_B = 0.0;
    std::vector<double> ratio_curve; // cum_regret_curve / bound_B
    std::int64_t fairness_violation_count = 0;
    std::int64_t coverage_violation_count = 0;
    bool any_fairness_violation = false;
    bool coverage_failure = false;
    double final_regret = 0.0;
    double max_ratio = 0.0;
};

double instantaneous_regret(const std::vector<double>& oracle_means, int chosen_arm);

/// Regret bound B(T) = k^(3/2) T^(1-alpha/2)
/// sqrt(log((1/log(18/11)) T^(1+alpha/4))); the curve plotted against R(t).
double regret_bound_B(int k, std::int64_t T, double alpha);

/// Variant with sqrt(k pi^2 / 6) inside the logarithm instead.
double regret_bound_B_theorem(int k, std::int64_t T, double alpha);

/// True iff some pair (i, j) has probs_i > probs_j and mu_i <= mu_j.
/// O(k log k) by sorting; equivalent to the pairwise definition.
bool fairness_audit(const std::vector<double>& probs, const std::vector<double>& oracle_means);

/// True iff every oracle mean lies inside its interval.
bool coverage_audit(const std::vector<ConfidenceInterval>& intervals,
                    const std::vector<double>& oracle_means);

/// Aggregates a trace. Throws empty_trace_error on an empty trace.
RunSummary summarize(const std::vector<StepRecord>& trace, double bound_B);

} // namespace fairucbe
