#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fairucbe/hyperparams.hpp"

namespace fairucbe::oracles {

struct CheckReport {
    std::string name;
    bool passed = false;
    std::string worst_case;
    double margin = 0.0; // slack of the tightest assertion; negative iff failed
    std::int64_t samples_used = 0;
};

using IntervalPair = std::pair<double, double>; // (lower, upper)

/// Fixed-point closure of the overlap relation around the max-upper-bound
/// arm. Written directly from the definition, sharing no code with the
/// policy implementation. Returns sorted arm indices.
std::vector<int> brute_force_active_set(const std::vector<IntervalPair>& intervals);

/// Second independent route: boolean reachability matrix (edge i -> j when
/// upper_j >= lower_i) closed transitively, then everything reachable from
/// the anchor.
std::vector<int> transitive_closure_active_set(const std::vector<IntervalPair>& intervals);

/// Grid check of (1 - x/n)^n <= 1 - 7x/9 on x in (0, 1/2], n in
/// {1..1000, 10^4, 10^6}. Reports the minimal slack.
CheckReport check_lemma4(int resolution);

/// epsilon_floor(T) <= 1/(2e log(18/11)) on a log-spaced grid of T in
/// [2, 10^9]; also locates the grid maximizer (should sit near T ~ 14.55).
CheckReport check_epsilon_bound(int grid_points = 4000);

/// Monte-Carlo model of the sample-spread event: each step selects each arm
/// with the worst-case probability 1/(k T^(alpha/2)); failure = some arm has
/// no sample in some block of length k T^(alpha/2+epsilon). Asserts the
/// empirical failure rate <= delta1 + 3 standard errors, and (via the exact
/// inclusion-exclusion probability) that doubling the block length strictly
/// lowers the failure probability.
CheckReport check_spread_lemma1(const Hyperparams& hp, int k, int replications,
                                std::uint64_t seed);

/// Monte-Carlo coverage of the drift-compensated Hoeffding interval under a
/// maximally drifting Bernoulli mean sequence, plus a direct numeric check
/// that the per-(arm, t) miss budgets sum to at most delta2.
CheckReport check_hoeffding_coverage(std::int64_t tau, std::int64_t t, const Hyperparams& hp,
                                     int replications, std::uint64_t seed);

std::string to_json(const CheckReport& report);

} // namespace fairucbe::oracles
