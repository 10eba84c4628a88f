#include "fairucbe/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fairucbe/errors.hpp"

namespace fairucbe {

void SampleBuffer::append(double reward, std::int64_t t) {
    if (!(reward >= 0.0 && reward <= 1.0)) {
        throw invalid_reward_error("reward must lie in [0, 1]");
    }
    rewards_.push_back(reward);
    timesteps_.push_back(t);
    prefix_.push_back(prefix_.back() + reward);
}

double SampleBuffer::window_mean(std::int64_t tau) const {
    const auto n = size();
    const double sum = prefix_[static_cast<std::size_t>(n)] -
                       prefix_[static_cast<std::size_t>(n - tau)];
    return sum / static_cast<double>(tau);
}

bool ActiveSet::contains(int arm) const {
    return std::binary_search(members.begin(), members.end(), arm);
}

std::int64_t window_length(std::int64_t t, std::int64_t available, int k, double alpha) {
    const double cap = std::ceil(std::pow(static_cast<double>(t), alpha) / k);
    return std::min(available, static_cast<std::int64_t>(cap));
}

double hoeffding_term(std::int64_t tau, std::int64_t t, int k, double delta2) {
    const double td = static_cast<double>(t);
    const double log_arg = k * std::numbers::pi * std::numbers::pi * td * td / (3.0 * delta2);
    return std::sqrt(std::log(log_arg) / (2.0 * static_cast<double>(tau)));
}

double drift_term(std::int64_t tau, const Hyperparams& hp) {
    const double scale = std::pow(static_cast<double>(hp.horizon_T),
                                  hp.alpha / 2.0 + hp.epsilon - hp.kappa);
    return hp.num_arms * scale * (static_cast<double>(tau) + 3.0) / 2.0;
}

double confidence_radius(std::int64_t tau, std::int64_t t, const Hyperparams& hp) {
    if (tau <= 0) {
        throw no_samples_error("confidence_radius requires at least one sample");
    }
    return hoeffding_term(tau, t, hp.num_arms, hp.delta2) + drift_term(tau, hp);
}

namespace {

ConfidenceInterval make_interval(double center, double radius, std::int64_t tau) {
    ConfidenceInterval ci;
    ci.center_mu_hat = center;
    ci.radius_c = radius;
    ci.window_tau = tau;
    ci.lower_a = std::max(0.0, center - radius);
    ci.upper_b = std::min(1.0, center + radius);
    return ci;
}

ConfidenceInterval prior_interval() { return make_interval(0.5, 0.5, 0); }

} // namespace

std::vector<ConfidenceInterval> build_intervals(const PolicyState& state, std::int64_t t,
                                                const Hyperparams& hp) {
    const int k = state.num_arms();
    std::vector<ConfidenceInterval> intervals;
    intervals.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const auto& buf = state.arms[static_cast<std::size_t>(i)];
        const std::int64_t tau = window_length(t, buf.size(), k, hp.alpha);
        if (tau == 0) {
            intervals.push_back(prior_interval());
            continue;
        }
        const double mu = buf.window_mean(tau);
        intervals.push_back(make_interval(mu, confidence_radius(tau, t, hp), tau));
    }
    return intervals;
}

ActiveSet build_active_set(const std::vector<ConfidenceInterval>& intervals) {
    const int k = static_cast<int>(intervals.size());
    int anchor = 0;
    for (int i = 1; i < k; ++i) {
        if (intervals[static_cast<std::size_t>(i)].upper_b >
            intervals[static_cast<std::size_t>(anchor)].upper_b) {
            anchor = i;
        }
    }

    std::vector<bool> in_set(static_cast<std::size_t>(k), false);
    in_set[static_cast<std::size_t>(anchor)] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int j = 0; j < k; ++j) {
            if (in_set[static_cast<std::size_t>(j)]) continue;
            for (int i = 0; i < k; ++i) {
                if (!in_set[static_cast<std::size_t>(i)]) continue;
                if (intervals[static_cast<std::size_t>(j)].upper_b >=
                    intervals[static_cast<std::size_t>(i)].lower_a) {
                    in_set[static_cast<std::size_t>(j)] = true;
                    changed = true;
                    break;
                }
            }
        }
    }

    ActiveSet active;
    active.anchor = anchor;
    for (int i = 0; i < k; ++i) {
        if (in_set[static_cast<std::size_t>(i)]) active.members.push_back(i);
    }
    return active;
}

std::vector<double> decision_distribution(const ActiveSet& active, int k, double explore_prob) {
    const double base = explore_prob / k;
    const double boost = (1.0 - explore_prob) / static_cast<double>(active.members.size());
    std::vector<double> probs(static_cast<std::size_t>(k), base);
    for (int arm : active.members) {
        probs[static_cast<std::size_t>(arm)] = base + boost;
    }
    return probs;
}

Decision fair_ucbe_step(const PolicyState& state, std::int64_t t, const Hyperparams& hp,
                        Rng& rng) {
    Decision d;
    d.timestep = t;
    d.intervals = build_intervals(state, t, hp);
    d.active_set = build_active_set(d.intervals);
    d.probs = decision_distribution(d.active_set, hp.num_arms, hp.explore_prob);

    std::bernoulli_distribution explore(hp.explore_prob);
    d.explored = explore(rng);
    if (d.explored) {
        std::uniform_int_distribution<int> pick(0, hp.num_arms - 1);
        d.chosen_arm = pick(rng);
    } else {
        std::uniform_int_distribution<std::size_t> pick(0, d.active_set.members.size() - 1);
        d.chosen_arm = d.active_set.members[pick(rng)];
    }
    return d;
}

void observe(PolicyState& state, int arm, double reward, std::int64_t t) {
    state.arms[static_cast<std::size_t>(arm)].append(reward, t);
}

Decision fairbandits_step(const PolicyState& state, std::int64_t t, const Hyperparams& hp,
                          Rng& rng) {
    const int k = state.num_arms();
    Decision d;
    d.timestep = t;
    d.explored = false;
    d.intervals.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const auto& buf = state.arms[static_cast<std::size_t>(i)];
        const std::int64_t n = buf.size();
        if (n == 0) {
            d.intervals.push_back(prior_interval());
            continue;
        }
        // Confidence budget is split over the whole horizon up front, so the
        // interval depends only on the samples, not on t.
        const double mu = buf.window_mean(n);
        const double c = hoeffding_term(n, hp.horizon_T, k, hp.delta2);
        d.intervals.push_back(make_interval(mu, c, n));
    }
    d.active_set = build_active_set(d.intervals);

    d.probs.assign(static_cast<std::size_t>(k), 0.0);
    const double p = 1.0 / static_cast<double>(d.active_set.members.size());
    for (int arm : d.active_set.members) {
        d.probs[static_cast<std::size_t>(arm)] = p;
    }
    std::uniform_int_distribution<std::size_t> pick(0, d.active_set.members.size() - 1);
    d.chosen_arm = d.active_set.members[pick(rng)];
    return d;
}

Decision ucb1_step(const PolicyState& state, std::int64_t t, int k, Rng& /*rng*/) {
    Decision d;
    d.timestep = t;
    d.explored = false;

    int best = -1;
    double best_index = -std::numeric_limits<double>::infinity();
    d.intervals.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const auto& buf = state.arms[static_cast<std::size_t>(i)];
        const std::int64_t n = buf.size();
        double mu = 0.5;
        double bonus = std::numeric_limits<double>::infinity();
        if (n > 0) {
            mu = buf.window_mean(n);
            bonus = std::sqrt(2.0 * std::log(static_cast<double>(t)) / static_cast<double>(n));
        }
        d.intervals.push_back(make_interval(mu, n > 0 ? bonus : 0.5, n));
        const double index = n > 0 ? mu + bonus : std::numeric_limits<double>::infinity();
        if (index > best_index) {
            best_index = index;
            best = i;
        }
    }

    d.chosen_arm = best;
    d.probs.assign(static_cast<std::size_t>(k), 0.0);
    d.probs[static_cast<std::size_t>(best)] = 1.0;
    d.active_set.members = {best};
    d.active_set.anchor = best;
    return d;
}

} // namespace fairucbe
