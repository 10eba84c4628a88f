#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "fairucbe/oracles.hpp"
#include "fairucbe/runner.hpp"

namespace py = pybind11;
using namespace fairucbe;

namespace {

py::dict summary_to_dict(const RunSummary& s) {
    py::dict d;
    d["final_regret"] = s.final_regret;
    d["bound_B"] = s.bound_B;
    d["max_ratio"] = s.max_ratio;
    d["fairness_violation_count"] = s.fairness_violation_count;
    d["coverage_violation_count"] = s.coverage_violation_count;
    d["any_fairness_violation"] = s.any_fairness_violation;
    d["coverage_failure"] = s.coverage_failure;
    return d;
}

py::dict report_to_dict(const oracles::CheckReport& r) {
    py::dict d;
    d["name"] = r.name;
    d["passed"] = r.passed;
    d["worst_case"] = r.worst_case;
    d["margin"] = r.margin;
    d["samples_used"] = r.samples_used;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fairness-aware UCB bandit core";

    // Translators run newest-first, so the base class goes in first.
    py::register_exception<error>(m, "FairUcbeError", PyExc_RuntimeError);
    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<constraint_error>(m, "ConstraintError", PyExc_ValueError);

    py::class_<Hyperparams>(m, "Hyperparams")
        .def_readonly("horizon_T", &Hyperparams::horizon_T)
        .def_readonly("kappa", &Hyperparams::kappa)
        .def_readonly("epsilon", &Hyperparams::epsilon)
        .def_readonly("alpha", &Hyperparams::alpha)
        .def_readonly("delta1", &Hyperparams::delta1)
        .def_readonly("delta2", &Hyperparams::delta2)
        .def_readonly("explore_prob", &Hyperparams::explore_prob)
        .def_readonly("sufficiency_M", &Hyperparams::sufficiency_M)
        .def_readonly("num_arms", &Hyperparams::num_arms);

    m.def("epsilon_floor", &epsilon_floor, py::arg("T"));
    m.def("alpha_ceiling", &alpha_ceiling, py::arg("epsilon"), py::arg("kappa"));
    m.def("derive_hyperparams", &derive_hyperparams, py::arg("T"), py::arg("kappa"),
          py::arg("k"), py::arg("epsilon") = std::nullopt, py::arg("alpha") = std::nullopt,
          py::arg("delta2") = std::nullopt);

    m.def("window_length", &window_length, py::arg("t"), py::arg("available"), py::arg("k"),
          py::arg("alpha"));
    m.def("confidence_radius", &confidence_radius, py::arg("tau"), py::arg("t"), py::arg("hp"));
    m.def("regret_bound_B", &regret_bound_B, py::arg("k"), py::arg("T"), py::arg("alpha"));

    m.def(
        "active_set",
        [](const std::vector<std::pair<double, double>>& intervals) {
            std::vector<ConfidenceInterval> cis;
            for (const auto& [a, b] : intervals) {
                ConfidenceInterval ci;
                ci.lower_a = a;
                ci.upper_b = b;
                ci.center_mu_hat = (a + b) / 2.0;
                ci.radius_c = (b - a) / 2.0;
                ci.window_tau = 1;
                cis.push_back(ci);
            }
            const auto active = build_active_set(cis);
            return py::make_tuple(active.members, active.anchor);
        },
        py::arg("intervals"),
        "Overlap-closure active set of (lower, upper) intervals; returns (members, anchor).");

    m.def(
        "decision_distribution",
        [](const std::vector<int>& members, int anchor, int k, double explore_prob) {
            ActiveSet active;
            active.members = members;
            active.anchor = anchor;
            return decision_distribution(active, k, explore_prob);
        },
        py::arg("members"), py::arg("anchor"), py::arg("k"), py::arg("explore_prob"));

    m.def("fairness_audit", &fairness_audit, py::arg("probs"), py::arg("oracle_means"));

    m.def(
        "simulate",
        [](const std::string& scenario, int k, std::int64_t T, double kappa,
           const std::string& policy, std::int64_t seed, std::optional<double> epsilon,
           std::optional<double> alpha) {
            ExperimentConfig cfg;
            cfg.scenario = scenario_from_string(scenario);
            cfg.k = cfg.scenario == Scenario::opposing2 ? 2 : k;
            cfg.T = T;
            cfg.kappas = {kappa};
            cfg.policy = policy_from_string(policy);
            cfg.base_seed = seed;
            cfg.epsilon = epsilon;
            cfg.alpha = alpha;
            const auto hp = derive_hyperparams(T, kappa, cfg.k, epsilon, alpha);
            const auto trace = run_replication(cfg, kappa, seed, hp, false);
            const auto summary = summarize(trace, regret_bound_B(cfg.k, T, hp.alpha));
            auto d = summary_to_dict(summary);
            d["hyperparams"] = hp;
            return d;
        },
        py::arg("scenario"), py::arg("k"), py::arg("T"), py::arg("kappa"),
        py::arg("policy") = "fair_ucbe", py::arg("seed") = 1,
        py::arg("epsilon") = std::nullopt, py::arg("alpha") = std::nullopt,
        "Run one replication and return its summary as a dict.");

    m.def("check_lemma4", [](int resolution) { return report_to_dict(oracles::check_lemma4(resolution)); },
          py::arg("resolution") = 500);
    m.def("check_epsilon_bound",
          [](int grid_points) { return report_to_dict(oracles::check_epsilon_bound(grid_points)); },
          py::arg("grid_points") = 4000);
}
