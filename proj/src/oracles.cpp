#include "fairucbe/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace fairucbe::oracles {

namespace {

const double kLog18over11 = std::log(18.0 / 11.0);

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

std::vector<int> brute_force_active_set(const std::vector<IntervalPair>& intervals) {
    const int k = static_cast<int>(intervals.size());
    int anchor = 0;
    for (int i = 1; i < k; ++i) {
        if (intervals[static_cast<std::size_t>(i)].second >
            intervals[static_cast<std::size_t>(anchor)].second) {
            anchor = i;
        }
    }
    std::set<int> active{anchor};
    bool grew = true;
    while (grew) {
        grew = false;
        for (int j = 0; j < k; ++j) {
            if (active.count(j)) continue;
            for (int i : active) {
                if (intervals[static_cast<std::size_t>(j)].second >=
                    intervals[static_cast<std::size_t>(i)].first) {
                    active.insert(j);
                    grew = true;
                    break;
                }
            }
            if (grew) break; // restart the scan with the enlarged set
        }
    }
    return {active.begin(), active.end()};
}

std::vector<int> transitive_closure_active_set(const std::vector<IntervalPair>& intervals) {
    const std::size_t k = intervals.size();
    std::size_t anchor = 0;
    for (std::size_t i = 1; i < k; ++i) {
        if (intervals[i].second > intervals[anchor].second) anchor = i;
    }
    // reach[i][j]: membership of i implies membership of j.
    std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            reach[i][j] = i == j || intervals[j].second >= intervals[i].first;
        }
    }
    for (std::size_t via = 0; via < k; ++via) {
        for (std::size_t i = 0; i < k; ++i) {
            if (!reach[i][via]) continue;
            for (std::size_t j = 0; j < k; ++j) {
                if (reach[via][j]) reach[i][j] = true;
            }
        }
    }
    std::vector<int> members;
    for (std::size_t j = 0; j < k; ++j) {
        if (reach[anchor][j]) members.push_back(static_cast<int>(j));
    }
    return members;
}

CheckReport check_lemma4(int resolution) {
    CheckReport report;
    report.name = "lemma4_grid";

    std::vector<std::int64_t> ns;
    for (std::int64_t n = 1; n <= 1000; ++n) ns.push_back(n);
    ns.push_back(10000);
    ns.push_back(1000000);

    double min_slack = std::numeric_limits<double>::infinity();
    double worst_x = 0.0;
    std::int64_t worst_n = 0;
    std::int64_t samples = 0;
    for (int i = 1; i <= resolution; ++i) {
        const double x = 0.5 * static_cast<double>(i) / resolution;
        const double rhs = 1.0 - 7.0 * x / 9.0;
        for (std::int64_t n : ns) {
            const double lhs = std::pow(1.0 - x / static_cast<double>(n), static_cast<double>(n));
            const double slack = rhs - lhs;
            ++samples;
            if (slack < min_slack) {
                min_slack = slack;
                worst_x = x;
                worst_n = n;
            }
        }
    }

    report.passed = min_slack > 0.0;
    report.margin = min_slack;
    report.samples_used = samples;
    report.worst_case = "x=" + format_double(worst_x) + " n=" + std::to_string(worst_n) +
                        " slack=" + format_double(min_slack);
    return report;
}

CheckReport check_epsilon_bound(int grid_points) {
    CheckReport report;
    report.name = "lemma2_epsilon_bound";

    const double bound = 1.0 / (2.0 * std::numbers::e * kLog18over11);
    const double lo = std::log(2.0);
    const double hi = std::log(1e9);

    double max_value = -std::numeric_limits<double>::infinity();
    double argmax_T = 0.0;
    double min_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid_points; ++i) {
        const double T = std::exp(lo + (hi - lo) * i / grid_points);
        const double v = epsilon_floor(T);
        min_slack = std::min(min_slack, bound - v);
        if (v > max_value) {
            max_value = v;
            argmax_T = T;
        }
    }

    const bool below_bound = min_slack >= 0.0;
    const bool peak_located = std::abs(argmax_T - 14.5669) <= 0.5;
    const bool peak_value = std::abs(max_value - 0.3735) <= 1e-3;
    report.passed = below_bound && peak_located && peak_value;
    report.margin = min_slack;
    report.samples_used = grid_points + 1;
    report.worst_case = "argmax_T=" + format_double(argmax_T) +
                        " max=" + format_double(max_value) + " bound=" + format_double(bound);
    return report;
}

namespace {

// P(some arm has no sample in one block of length block_len), arms selected
// per step with probability p each, by inclusion-exclusion.
double block_failure_probability(int k, double p, double block_len) {
    double q = 0.0;
    double binom = 1.0; // C(k, j), updated incrementally
    for (int j = 1; j <= k; ++j) {
        binom = binom * (k - j + 1) / j;
        const double term = binom * std::pow(1.0 - j * p, block_len);
        q += (j % 2 == 1) ? term : -term;
    }
    return q;
}

double run_failure_probability(int k, double p, double block_len, double horizon) {
    const double blocks = std::floor(horizon / block_len);
    if (blocks < 1.0) return 0.0;
    return 1.0 - std::pow(1.0 - block_failure_probability(k, p, block_len), blocks);
}

} // namespace

CheckReport check_spread_lemma1(const Hyperparams& hp, int k, int replications,
                                std::uint64_t seed) {
    CheckReport report;
    report.name = "lemma1_sample_spread";

    const double td = static_cast<double>(hp.horizon_T);
    const double p = 1.0 / (k * std::pow(td, hp.alpha / 2.0));
    const auto block_len = static_cast<std::int64_t>(
        std::ceil(k * std::pow(td, hp.alpha / 2.0 + hp.epsilon)));
    const std::int64_t num_blocks = hp.horizon_T / block_len;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int failures = 0;
    for (int rep = 0; rep < replications; ++rep) {
        bool failed = false;
        for (std::int64_t b = 0; b < num_blocks && !failed; ++b) {
            std::vector<bool> seen(static_cast<std::size_t>(k), false);
            int unseen = k;
            for (std::int64_t s = 0; s < block_len; ++s) {
                const double u = unif(rng);
                if (u < k * p) {
                    const auto arm = static_cast<std::size_t>(u / p);
                    if (!seen[arm]) {
                        seen[arm] = true;
                        --unseen;
                    }
                }
            }
            failed = unseen > 0;
        }
        if (failed) ++failures;
    }

    const double rate = static_cast<double>(failures) / replications;
    const double se = std::sqrt(rate * (1.0 - rate) / replications);
    const double budget = hp.delta1 + 3.0 * se;

    const double exact = run_failure_probability(k, p, static_cast<double>(block_len),
                                                 static_cast<double>(hp.horizon_T));
    const double exact_doubled = run_failure_probability(k, p, 2.0 * block_len,
                                                         static_cast<double>(hp.horizon_T));

    const bool within_budget = rate <= budget;
    const bool monotone = exact_doubled < exact;
    report.passed = within_budget && monotone;
    report.margin = budget - rate;
    report.samples_used = replications;
    report.worst_case = "rate=" + format_double(rate) + " budget=" + format_double(budget) +
                        " exact=" + format_double(exact) +
                        " exact_doubled=" + format_double(exact_doubled);
    return report;
}

CheckReport check_hoeffding_coverage(std::int64_t tau, std::int64_t t, const Hyperparams& hp,
                                     int replications, std::uint64_t seed) {
    CheckReport report;
    report.name = "lemma3_hoeffding_coverage";

    const double td = static_cast<double>(hp.horizon_T);
    const int k = hp.num_arms;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double log_arg = k * pi2 * static_cast<double>(t) * static_cast<double>(t) /
                           (3.0 * hp.delta2);
    const double a_over_tau = std::sqrt(std::log(log_arg) / (2.0 * static_cast<double>(tau)));
    const double drift = k * std::pow(td, hp.alpha / 2.0 + hp.epsilon - hp.kappa) *
                         (static_cast<double>(tau) + 3.0) / 2.0;
    const double radius = a_over_tau + drift;

    // Adversarial sample schedule: consecutive samples spaced a full block of
    // k T^(alpha/2+epsilon) steps apart, mean drifting maximally between them.
    const double spacing = k * std::pow(td, hp.alpha / 2.0 + hp.epsilon);
    const double per_sample_shift = spacing * std::pow(td, -hp.kappa);
    const double mu_now = 0.4;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int misses = 0;
    for (int rep = 0; rep < replications; ++rep) {
        double sum = 0.0;
        for (std::int64_t i = 1; i <= tau; ++i) {
            const double mu_i = std::clamp(mu_now + static_cast<double>(i) * per_sample_shift,
                                           0.0, 1.0);
            sum += unif(rng) < mu_i ? 1.0 : 0.0;
        }
        const double mu_hat = sum / static_cast<double>(tau);
        if (std::abs(mu_hat - mu_now) >= radius) ++misses;
    }

    const double rate = static_cast<double>(misses) / replications;
    const double se = std::sqrt(rate * (1.0 - rate) / replications);
    const double per_step_budget = 6.0 * hp.delta2 / (k * pi2 * static_cast<double>(t) *
                                                      static_cast<double>(t));
    const double budget = per_step_budget + 3.0 * se;

    // Union bound over arms and t = 1..1000 must stay within delta2.
    double budget_sum = 0.0;
    for (int tt = 1; tt <= 1000; ++tt) {
        budget_sum += k * 6.0 * hp.delta2 / (k * pi2 * static_cast<double>(tt) *
                                             static_cast<double>(tt));
    }

    const bool within_budget = rate <= budget;
    const bool union_ok = budget_sum <= hp.delta2;
    report.passed = within_budget && union_ok;
    report.margin = budget - rate;
    report.samples_used = replications;
    report.worst_case = "miss_rate=" + format_double(rate) + " budget=" + format_double(budget) +
                        " union_sum=" + format_double(budget_sum) +
                        " delta2=" + format_double(hp.delta2);
    return report;
}

std::string to_json(const CheckReport& report) {
    std::ostringstream os;
    os.precision(12);
    os << "{\"name\":\"" << report.name << "\",\"passed\":" << (report.passed ? "true" : "false")
       << ",\"worst_case\":\"" << report.worst_case << "\",\"margin\":" << report.margin
       << ",\"samples_used\":" << report.samples_used << "}";
    return os.str();
}

} // namespace fairucbe::oracles
