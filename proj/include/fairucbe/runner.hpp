#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairucbe/environment.hpp"
#include "fairucbe/metrics.hpp"

namespace fairucbe {

enum class Scenario { drift10, opposing2, stationary, custom };
enum class PolicyKind { fair_ucbe, fairbandits, ucb1 };

Scenario scenario_from_string(const std::string& s);
PolicyKind policy_from_string(const std::string& s);
std::string to_string(Scenario s);
std::string to_string(PolicyKind p);

struct ExperimentConfig {
    Scenario scenario = Scenario::drift10;
    int k = 10;
    std::int64_t T = 0;
    std::vector<double> kappas;
    PolicyKind policy = PolicyKind::fair_ucbe;
    std::int64_t base_seed = 1;
    int replications = 1;
    std::optional<double> epsilon;
    std::optional<double> alpha;
    std::optional<double> delta2;
    double nu = 2.0;
    double persistence = 0.8;
    std::string out_dir = ".";
    std::string format = "csv";
    std::int64_t thin = 0;              // 0 = auto: 1 for T <= 1e5, 100 beyond
    bool include_intervals = false;     // per-arm (a_i, b_i) columns in the trace
};

/// Parse and validate a JSON config document (path contents or inline text).
/// Throws config_error naming the violated constraint.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

struct ReplicationOutcome {
    double kappa = 0.0;
    int replication = 0;
    std::int64_t seed = 0;
    Hyperparams hp;
    RunSummary summary;
    std::string trace_path; // empty when no file was written
};

/// One simulated run: env + policy, t = 1..T of decide / sample / audit /
/// observe / drift. keep_details retains per-step intervals and oracle means.
std::vector<StepRecord> run_replication(const ExperimentConfig& cfg, double kappa,
                                        std::int64_t seed, const Hyperparams& hp,
                                        bool keep_details);

/// Full experiment: every (kappa, replication), trace + summary files under
/// cfg.out_dir. Deterministic per (config, base_seed).
std::vector<ReplicationOutcome> run_experiment(const ExperimentConfig& cfg);

/// One row per kappa with the mean final R(T)/B(T); writes sweep.csv and
/// returns the outcomes.
std::vector<ReplicationOutcome> sweep(const ExperimentConfig& cfg);

std::int64_t effective_thin(const ExperimentConfig& cfg);

void write_trace_csv(const std::vector<StepRecord>& trace, const std::string& path,
                     std::int64_t thin, bool include_intervals, int k);

struct AuditReport {
    std::int64_t rows = 0;
    bool monotone_t = false;
    bool prefix_consistent = false; // cum_regret matches the partial sums implied by the rows
    std::int64_t fairness_violations = 0;
    std::int64_t coverage_violations = 0;
    double final_cum_regret = 0.0;
};

/// Re-audit an existing trace CSV from the file alone.
AuditReport audit_trace_file(const std::string& path);

std::string to_json(const AuditReport& report);

} // namespace fairucbe
