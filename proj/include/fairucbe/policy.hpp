#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fairucbe/hyperparams.hpp"

namespace fairucbe {

/// Append-only reward history of one arm. A running prefix sum makes
/// sliding-window means O(1).
class SampleBuffer {
public:
    void append(double reward, std::int64_t t);

    std::int64_t size() const { return static_cast<std::int64_t>(rewards_.size()); }

    /// Mean of the latest tau samples. tau must be in [1, size()].
    double window_mean(std::int64_t tau) const;

    const std::vector<double>& rewards() const { return rewards_; }
    const std::vector<std::int64_t>& timesteps() const { return timesteps_; }

private:
    std::vector<double> rewards_;
    std::vector<std::int64_t> timesteps_;
    std::vector<double> prefix_{0.0};
};

struct PolicyState {
    explicit PolicyState(int k) : arms(static_cast<std::size_t>(k)) {}
    std::vector<SampleBuffer> arms;
    int num_arms() const { return static_cast<int>(arms.size()); }
};

/// [lower_a, upper_b] = [center - radius, center + radius] clipped to [0,1].
/// window_tau == 0 marks the degenerate prior [0,1] for unsampled arms.
struct ConfidenceInterval {
    double lower_a = 0.0;
    double upper_b = 1.0;
    double center_mu_hat = 0.5;
    double radius_c = 0.5;
    std::int64_t window_tau = 0;
};

/// Overlap-closure of intervals around the arm with the highest upper bound.
struct ActiveSet {
    std::vector<int> members; // sorted ascending
    int anchor = 0;

    bool contains(int arm) const;
};

struct Decision {
    std::int64_t timestep = 0;
    int chosen_arm = 0;
    std::vector<double> probs;
    bool explored = false;
    ActiveSet active_set;
    std::vector<ConfidenceInterval> intervals;
};

using Rng = std::mt19937_64;

/// min{available, ceil(t^alpha / k)}.
std::int64_t window_length(std::int64_t t, std::int64_t available, int k, double alpha);

/// Hoeffding term sqrt(log(k pi^2 t^2 / (3 delta2)) / (2 tau)).
double hoeffding_term(std::int64_t tau, std::int64_t t, int k, double delta2);

/// Drift compensation k * T^(alpha/2 + epsilon - kappa) * (tau + 3) / 2.
double drift_term(std::int64_t tau, const Hyperparams& hp);

/// Sum of the two terms above. Throws no_samples_error for tau == 0.
double confidence_radius(std::int64_t tau, std::int64_t t, const Hyperparams& hp);

std::vector<ConfidenceInterval> build_intervals(const PolicyState& state, std::int64_t t,
                                                const Hyperparams& hp);

ActiveSet build_active_set(const std::vector<ConfidenceInterval>& intervals);

/// probs_i = explore_prob/k + (1 - explore_prob)/|active| for members,
/// explore_prob/k otherwise.
std::vector<double> decision_distribution(const ActiveSet& active, int k, double explore_prob);

Decision fair_ucbe_step(const PolicyState& state, std::int64_t t, const Hyperparams& hp, Rng& rng);

void observe(PolicyState& state, int arm, double reward, std::int64_t t);

/// FairBandits baseline: same chained active set, full-history window,
/// no exploration mixture, horizon-level Hoeffding radius (no drift term).
Decision fairbandits_step(const PolicyState& state, std::int64_t t, const Hyperparams& hp,
                          Rng& rng);

/// UCB1 baseline: deterministic argmax of mean + sqrt(2 log t / n), point-mass
/// probs, unpulled arms first, ties to the lowest index.
Decision ucb1_step(const PolicyState& state, std::int64_t t, int k, Rng& rng);

} // namespace fairucbe
