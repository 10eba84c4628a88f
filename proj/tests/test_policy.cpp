#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fairucbe/policy.hpp"

using namespace fairucbe;

namespace {

Hyperparams example_hp() {
    Hyperparams hp;
    hp.horizon_T = 10000;
    hp.kappa = 2.0;
    hp.epsilon = 0.4;
    hp.alpha = 0.5;
    hp.num_arms = 10;
    hp.delta1 = hp.delta2 = hp.explore_prob = std::pow(1e4, -0.25);
    return hp;
}

ConfidenceInterval interval(double a, double b) {
    ConfidenceInterval ci;
    ci.lower_a = a;
    ci.upper_b = b;
    ci.center_mu_hat = (a + b) / 2.0;
    ci.radius_c = (b - a) / 2.0;
    ci.window_tau = 1;
    return ci;
}

} // namespace

TEST_CASE("window_length") {
    CHECK(window_length(1000, 0, 10, 0.5) == 0);
    CHECK(window_length(1000, 100, 10, 0.5) == 4); // ceil(sqrt(1000)/10)
    CHECK(window_length(1, 5, 10, 0.3) == 1);      // ceil(0.1) = 1
    CHECK(window_length(1000, 2, 10, 0.5) == 2);   // capped by availability
}

TEST_CASE("confidence_radius matches the hand-computed decomposition") {
    Hyperparams hp = example_hp();
    hp.delta2 = 0.1; // = T^(-alpha/2) here, spelled out
    const double hoeff = hoeffding_term(4, 1000, 10, 0.1);
    const double drift = drift_term(4, hp);
    // Independent evaluation: sqrt(log(10 pi^2 1e6 / 0.3) / 8) and
    // 10 * 1e4^(-1.35) * 3.5.
    CHECK(hoeff == doctest::Approx(1.5657078362111).epsilon(1e-10));
    CHECK(drift == doctest::Approx(1.3933750969372e-4).epsilon(1e-10));
    CHECK(confidence_radius(4, 1000, hp) == doctest::Approx(hoeff + drift));
    CHECK(hoeff >= 0.0);
    CHECK(drift >= 0.0);
}

TEST_CASE("confidence_radius rejects tau = 0") {
    CHECK_THROWS_AS(confidence_radius(0, 10, example_hp()), no_samples_error);
}

TEST_CASE("drift term vanishes as kappa grows") {
    Hyperparams hp = example_hp();
    hp.kappa = 60.0;
    CHECK(drift_term(4, hp) == doctest::Approx(0.0).epsilon(1e-200));
    CHECK(confidence_radius(4, 1000, hp) == doctest::Approx(hoeffding_term(4, 1000, 10, hp.delta2)));
}

TEST_CASE("doubling tau shrinks the Hoeffding term by less than 1/sqrt(2)") {
    for (std::int64_t tau : {2, 8, 64, 1024}) {
        const double c1 = hoeffding_term(tau, 1000, 10, 0.1);
        const double c2 = hoeffding_term(2 * tau, 1000, 10, 0.1);
        CHECK(c2 < c1);
        CHECK(c2 == doctest::Approx(c1 / std::sqrt(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("build_intervals uses the prior [0,1] for unsampled arms") {
    const Hyperparams hp = example_hp();
    PolicyState state(10);
    const auto intervals = build_intervals(state, 1, hp);
    for (const auto& ci : intervals) {
        CHECK(ci.lower_a == 0.0);
        CHECK(ci.upper_b == 1.0);
        CHECK(ci.window_tau == 0);
    }
}

TEST_CASE("build_intervals centers on the window mean and clips") {
    const Hyperparams hp = example_hp();
    PolicyState state(10);
    observe(state, 3, 0.5, 1);
    observe(state, 3, 0.7, 2);
    // ceil(400^0.5 / 10) = 2, so the window covers both samples.
    const auto intervals = build_intervals(state, 400, hp);
    const auto& ci = intervals[3];
    CHECK(ci.window_tau == 2);
    CHECK(ci.center_mu_hat == doctest::Approx(0.6));
    const double c = confidence_radius(2, 400, hp);
    CHECK(ci.radius_c == doctest::Approx(c));
    CHECK(ci.lower_a == doctest::Approx(std::max(0.0, 0.6 - c)));
    CHECK(ci.upper_b == doctest::Approx(std::min(1.0, 0.6 + c)));
    CHECK(ci.lower_a >= 0.0);
    CHECK(ci.upper_b <= 1.0);
}

TEST_CASE("build_active_set chains overlapping intervals") {
    const std::vector<ConfidenceInterval> intervals{interval(0.7, 0.9), interval(0.65, 0.75),
                                                    interval(0.1, 0.3)};
    const auto active = build_active_set(intervals);
    CHECK(active.anchor == 0);
    CHECK(active.members == std::vector<int>{0, 1});
}

TEST_CASE("build_active_set on disjoint intervals is a singleton") {
    const std::vector<ConfidenceInterval> intervals{interval(0.1, 0.2), interval(0.5, 0.6),
                                                    interval(0.8, 0.9)};
    const auto active = build_active_set(intervals);
    CHECK(active.members == std::vector<int>{2});
    CHECK(active.anchor == 2);
}

TEST_CASE("build_active_set on identical intervals contains all arms") {
    const std::vector<ConfidenceInterval> intervals(5, interval(0.4, 0.6));
    const auto active = build_active_set(intervals);
    CHECK(active.members == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(active.anchor == 0); // lowest-index tie rule
}

TEST_CASE("decision_distribution closed form") {
    ActiveSet active;
    active.members = {0};
    active.anchor = 0;
    const auto probs = decision_distribution(active, 2, 0.1);
    CHECK(probs[0] == doctest::Approx(0.95).epsilon(1e-14));
    CHECK(probs[1] == doctest::Approx(0.05).epsilon(1e-14));
}

TEST_CASE("decision_distribution is uniform when all arms are active") {
    ActiveSet active;
    active.members = {0, 1, 2, 3};
    const auto probs = decision_distribution(active, 4, 0.3);
    for (double p : probs) CHECK(p == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("members dominate nonmembers and sums are exact") {
    ActiveSet active;
    active.members = {1, 3};
    const auto probs = decision_distribution(active, 6, 0.2);
    double sum = 0.0;
    for (double p : probs) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(probs[1] == probs[3]);
    CHECK(probs[0] == probs[2]);
    CHECK(probs[1] > 1.0 / 6.0);
    CHECK(probs[0] < 1.0 / 6.0);
    CHECK(probs[0] == doctest::Approx(0.2 / 6.0));
}

TEST_CASE("fair_ucbe_step is deterministic for a fixed seed and state") {
    const auto hp = derive_hyperparams(10000, 2.0, 5);
    PolicyState state(5);
    for (int i = 0; i < 5; ++i) observe(state, i, 0.2 + 0.1 * i, i + 1);

    Rng rng_a(42), rng_b(42);
    const auto d1 = fair_ucbe_step(state, 6, hp, rng_a);
    const auto d2 = fair_ucbe_step(state, 6, hp, rng_b);
    CHECK(d1.chosen_arm == d2.chosen_arm);
    CHECK(d1.explored == d2.explored);
    CHECK(d1.probs == d2.probs);
    CHECK(d1.active_set.members == d2.active_set.members);
}

TEST_CASE("fair_ucbe_step at t = 1 treats all arms alike") {
    const auto hp = derive_hyperparams(10000, 2.0, 5);
    PolicyState state(5);
    Rng rng(7);
    const auto d = fair_ucbe_step(state, 1, hp, rng);
    CHECK(d.active_set.members.size() == 5);
    for (double p : d.probs) CHECK(p == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("empirical arm frequencies match the closed-form distribution") {
    const auto hp = derive_hyperparams(10000, 2.0, 5);
    PolicyState state(5);
    // Freeze a state where arms separate into an active pair and the rest.
    for (int rep = 0; rep < 150; ++rep) {
        observe(state, 0, 0.9, rep);
        observe(state, 1, 0.85, rep);
        observe(state, 2, 0.1, rep);
        observe(state, 3, 0.12, rep);
        observe(state, 4, 0.11, rep);
    }
    Rng probe(1);
    const auto ref = fair_ucbe_step(state, 4000, hp, probe);
    REQUIRE(ref.active_set.members.size() < 5);

    const int n = 100000;
    std::vector<int> counts(5, 0);
    Rng rng(20240603);
    for (int i = 0; i < n; ++i) {
        const auto d = fair_ucbe_step(state, 4000, hp, rng);
        ++counts[static_cast<std::size_t>(d.chosen_arm)];
    }
    for (int arm = 0; arm < 5; ++arm) {
        const double p = ref.probs[static_cast<std::size_t>(arm)];
        const double freq = static_cast<double>(counts[static_cast<std::size_t>(arm)]) / n;
        const double se = std::sqrt(p * (1.0 - p) / n);
        CHECK(std::abs(freq - p) <= 3.0 * se);
    }
}

TEST_CASE("observe validates and appends in order") {
    PolicyState state(3);
    CHECK_THROWS_AS(observe(state, 0, 1.3, 1), invalid_reward_error);
    CHECK_THROWS_AS(observe(state, 0, -0.1, 1), invalid_reward_error);
    observe(state, 0, 0.5, 1);
    CHECK(state.arms[0].size() == 1);
    CHECK(state.arms[1].size() == 0);
    observe(state, 0, 0.25, 2);
    observe(state, 0, 1.0, 5);
    CHECK(state.arms[0].rewards() == std::vector<double>{0.5, 0.25, 1.0});
    CHECK(state.arms[0].timesteps() == std::vector<std::int64_t>{1, 2, 5});
    CHECK(state.arms[0].window_mean(2) == doctest::Approx(0.625));
}

TEST_CASE("fairbandits never explores and zeroes nonmember probability") {
    const auto hp = derive_hyperparams(10000, 2.0, 3);
    PolicyState state(3);
    // Enough samples that the horizon-level radius (~0.17) cannot bridge the
    // gap between the best arm and the rest.
    for (int rep = 0; rep < 400; ++rep) {
        observe(state, 0, 0.95, rep);
        observe(state, 1, 0.1, rep);
        observe(state, 2, 0.05, rep);
    }
    Rng rng(5);
    const auto d = fairbandits_step(state, 500, hp, rng);
    CHECK_FALSE(d.explored);
    CHECK(d.active_set.members == std::vector<int>{0});
    CHECK(d.probs == std::vector<double>{1.0, 0.0, 0.0});
    // Full-history window, not the sliding one.
    CHECK(d.intervals[0].window_tau == 400);
}

TEST_CASE("ucb1 prefers unpulled arms and breaks ties by index") {
    PolicyState state(3);
    Rng rng(1);
    auto d = ucb1_step(state, 1, 3, rng);
    CHECK(d.chosen_arm == 0); // all unpulled, lowest index
    observe(state, 0, 0.5, 1);
    d = ucb1_step(state, 2, 3, rng);
    CHECK(d.chosen_arm == 1); // first remaining unpulled arm
    CHECK(d.probs == std::vector<double>{0.0, 1.0, 0.0});

    PolicyState tied(2);
    observe(tied, 0, 0.4, 1);
    observe(tied, 1, 0.4, 2);
    d = ucb1_step(tied, 3, 2, rng);
    CHECK(d.chosen_arm == 0);
}

TEST_CASE("ucb1 pulls a clearly suboptimal arm only logarithmically often") {
    PolicyState state(2);
    Rng rng(99);
    std::bernoulli_distribution good(0.9), bad(0.1);
    int bad_pulls = 0;
    const std::int64_t T = 10000;
    for (std::int64_t t = 1; t <= T; ++t) {
        const auto d = ucb1_step(state, t, 2, rng);
        const double r = d.chosen_arm == 0 ? (good(rng) ? 1.0 : 0.0) : (bad(rng) ? 1.0 : 0.0);
        if (d.chosen_arm == 1) ++bad_pulls;
        observe(state, d.chosen_arm, r, t);
    }
    // 8 log T / gap^2 + slack comfortably covers the expected pull count.
    CHECK(bad_pulls <= 40.0 * std::log(static_cast<double>(T)));
    CHECK(bad_pulls >= 1);
}
