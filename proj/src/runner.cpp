#include "fairucbe/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fairucbe {

namespace fs = std::filesystem;
using nlohmann::json;

Scenario scenario_from_string(const std::string& s) {
    if (s == "drift10") return Scenario::drift10;
    if (s == "opposing2") return Scenario::opposing2;
    if (s == "stationary") return Scenario::stationary;
    if (s == "custom") return Scenario::custom;
    throw config_error("unknown scenario: " + s);
}

PolicyKind policy_from_string(const std::string& s) {
    if (s == "fair_ucbe") return PolicyKind::fair_ucbe;
    if (s == "fairbandits") return PolicyKind::fairbandits;
    if (s == "ucb1") return PolicyKind::ucb1;
    throw config_error("unknown policy: " + s);
}

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::drift10: return "drift10";
        case Scenario::opposing2: return "opposing2";
        case Scenario::stationary: return "stationary";
        case Scenario::custom: return "custom";
    }
    return "custom";
}

std::string to_string(PolicyKind p) {
    switch (p) {
        case PolicyKind::fair_ucbe: return "fair_ucbe";
        case PolicyKind::fairbandits: return "fairbandits";
        case PolicyKind::ucb1: return "ucb1";
    }
    return "fair_ucbe";
}

namespace {

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.T < 2) throw config_error("constraint violated: T >= 2");
    if (cfg.k < 2) throw config_error("constraint violated: k >= 2");
    if (cfg.replications < 1) throw config_error("constraint violated: replications >= 1");
    if (cfg.kappas.empty()) throw config_error("constraint violated: at least one kappa");
    for (double kap : cfg.kappas) {
        if (!(kap > 0.0)) throw config_error("constraint violated: kappa > 0");
    }
    if (!(cfg.nu > 0.0)) throw config_error("constraint violated: nu > 0");
    if (!(cfg.persistence >= 0.0 && cfg.persistence <= 1.0)) {
        throw config_error("constraint violated: persistence in [0, 1]");
    }
    if (cfg.format != "csv" && cfg.format != "json") {
        throw config_error("constraint violated: format must be csv or json");
    }
    if (cfg.thin < 0) throw config_error("constraint violated: thin >= 0");
    if (cfg.scenario == Scenario::opposing2 && cfg.k != 2) {
        throw config_error("constraint violated: opposing2 requires k = 2");
    }
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw io_error(std::string("config parse error: ") + e.what());
    }

    ExperimentConfig cfg;
    try {
        if (doc.contains("scenario")) cfg.scenario = scenario_from_string(doc["scenario"]);
        if (cfg.scenario == Scenario::opposing2) cfg.k = 2;
        if (cfg.scenario == Scenario::opposing2) cfg.include_intervals = true;
        if (doc.contains("k")) cfg.k = doc["k"];
        if (doc.contains("T")) cfg.T = doc["T"];
        if (doc.contains("kappa")) {
            if (doc["kappa"].is_array()) {
                cfg.kappas = doc["kappa"].get<std::vector<double>>();
            } else {
                cfg.kappas = {doc["kappa"].get<double>()};
            }
        }
        if (doc.contains("policy")) cfg.policy = policy_from_string(doc["policy"]);
        if (doc.contains("seed")) cfg.base_seed = doc["seed"];
        if (doc.contains("replications")) cfg.replications = doc["replications"];
        if (doc.contains("epsilon")) cfg.epsilon = doc["epsilon"].get<double>();
        if (doc.contains("alpha")) cfg.alpha = doc["alpha"].get<double>();
        if (doc.contains("delta2")) cfg.delta2 = doc["delta2"].get<double>();
        if (doc.contains("nu")) cfg.nu = doc["nu"];
        if (doc.contains("persistence")) cfg.persistence = doc["persistence"];
        if (doc.contains("out")) cfg.out_dir = doc["out"];
        if (doc.contains("format")) cfg.format = doc["format"];
        if (doc.contains("thin")) cfg.thin = doc["thin"];
        if (doc.contains("include_intervals")) cfg.include_intervals = doc["include_intervals"];
    } catch (const json::exception& e) {
        throw io_error(std::string("config parse error: ") + e.what());
    }

    validate_config(cfg);
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::int64_t effective_thin(const ExperimentConfig& cfg) {
    if (cfg.thin > 0) return cfg.thin;
    return cfg.T <= 100000 ? 1 : 100;
}

namespace {

Rng make_rng(std::int64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(static_cast<std::uint64_t>(seed) >> 32), stream};
    return Rng(seq);
}

EnvState make_env(const ExperimentConfig& cfg, double kappa, Rng& rng) {
    EnvState env;
    switch (cfg.scenario) {
        case Scenario::opposing2:
            env = make_opposing_env(cfg.T, kappa);
            break;
        case Scenario::stationary:
            env = make_stationary_env(cfg.k, cfg.T, rng);
            break;
        case Scenario::drift10:
        case Scenario::custom:
            env = make_drifting_env(cfg.k, cfg.T, kappa, rng);
            break;
    }
    env.persistence_p = cfg.persistence;
    env.concentration_nu = cfg.nu;
    return env;
}

} // namespace

std::vector<StepRecord> run_replication(const ExperimentConfig& cfg, double kappa,
                                        std::int64_t seed, const Hyperparams& hp,
                                        bool keep_details) {
    Rng env_rng = make_rng(seed, 0xe17f00d1u);
    Rng policy_rng = make_rng(seed, 0x9a1cb0f2u);

    EnvState env = make_env(cfg, kappa, env_rng);
    PolicyState state(cfg.k);

    std::vector<StepRecord> trace;
    trace.reserve(static_cast<std::size_t>(cfg.T));
    for (std::int64_t t = 1; t <= cfg.T; ++t) {
        Decision d;
        switch (cfg.policy) {
            case PolicyKind::fair_ucbe:
                d = fair_ucbe_step(state, t, hp, policy_rng);
                break;
            case PolicyKind::fairbandits:
                d = fairbandits_step(state, t, hp, policy_rng);
                break;
            case PolicyKind::ucb1:
                d = ucb1_step(state, t, cfg.k, policy_rng);
                break;
        }

        const double reward = sample_reward(env, d.chosen_arm, env_rng);
        const std::vector<double>& means = env.means;

        StepRecord rec;
        rec.t = t;
        rec.chosen_arm = d.chosen_arm;
        rec.reward = reward;
        rec.explored = d.explored;
        rec.active_set_size = static_cast<int>(d.active_set.members.size());
        rec.inst_regret = instantaneous_regret(means, d.chosen_arm);
        rec.fairness_violation = fairness_audit(d.probs, means);
        rec.coverage_violation = !coverage_audit(d.intervals, means);
        if (keep_details) {
            rec.intervals = d.intervals;
            rec.oracle_means = means;
        }
        trace.push_back(std::move(rec));

        observe(state, d.chosen_arm, reward, t);
        drift_step(env, env_rng);
    }
    return trace;
}

namespace {

void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

json summary_to_json(const RunSummary& s) {
    return json{{"final_regret", s.final_regret},
                {"bound_B", s.bound_B},
                {"final_ratio", s.final_regret / s.bound_B},
                {"max_ratio", s.max_ratio},
                {"fairness_violation_count", s.fairness_violation_count},
                {"coverage_violation_count", s.coverage_violation_count},
                {"any_fairness_violation", s.any_fairness_violation},
                {"coverage_failure", s.coverage_failure}};
}

std::string kappa_tag(double kappa) {
    std::ostringstream os;
    os << kappa;
    std::string tag = os.str();
    std::replace(tag.begin(), tag.end(), '.', 'p');
    return tag;
}

} // namespace

void write_trace_csv(const std::vector<StepRecord>& trace, const std::string& path,
                     std::int64_t thin, bool include_intervals, int k) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open trace file for writing: " + path);

    std::string line = "t,chosen_arm,reward,explored,active_set_size,inst_regret,cum_regret,"
                       "fairness_violation,coverage_violation";
    if (include_intervals) {
        for (int i = 0; i < k; ++i) {
            line += ",a_" + std::to_string(i) + ",b_" + std::to_string(i);
        }
    }
    out << line << "\n";

    double cum = 0.0;
    const std::int64_t last_t = trace.empty() ? 0 : trace.back().t;
    for (const auto& rec : trace) {
        cum += rec.inst_regret;
        // Violations are never thinned away; first and last rows always kept.
        const bool keep = rec.t % thin == 0 || rec.t == 1 || rec.t == last_t ||
                          rec.fairness_violation || rec.coverage_violation;
        if (!keep) continue;
        line.clear();
        line += std::to_string(rec.t);
        line += ',';
        line += std::to_string(rec.chosen_arm);
        line += ',';
        append_double(line, rec.reward);
        line += ',';
        line += rec.explored ? '1' : '0';
        line += ',';
        line += std::to_string(rec.active_set_size);
        line += ',';
        append_double(line, rec.inst_regret);
        line += ',';
        append_double(line, cum);
        line += ',';
        line += rec.fairness_violation ? '1' : '0';
        line += ',';
        line += rec.coverage_violation ? '1' : '0';
        if (include_intervals) {
            for (const auto& ci : rec.intervals) {
                line += ',';
                append_double(line, ci.lower_a);
                line += ',';
                append_double(line, ci.upper_b);
            }
        }
        out << line << "\n";
    }
}

std::vector<ReplicationOutcome> run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    fs::create_directories(cfg.out_dir);
    const std::int64_t thin = effective_thin(cfg);

    std::vector<ReplicationOutcome> outcomes;
    json summaries = json::array();
    for (double kappa : cfg.kappas) {
        const Hyperparams hp =
            derive_hyperparams(cfg.T, kappa, cfg.k, cfg.epsilon, cfg.alpha, cfg.delta2);
        const double bound = regret_bound_B(cfg.k, cfg.T, hp.alpha);
        for (int rep = 0; rep < cfg.replications; ++rep) {
            const std::int64_t seed = cfg.base_seed + rep;
            const auto trace =
                run_replication(cfg, kappa, seed, hp, cfg.include_intervals);

            ReplicationOutcome out;
            out.kappa = kappa;
            out.replication = rep;
            out.seed = seed;
            out.hp = hp;
            out.summary = summarize(trace, bound);
            out.trace_path = (fs::path(cfg.out_dir) /
                              ("trace_kappa" + kappa_tag(kappa) + "_rep" + std::to_string(rep) +
                               ".csv"))
                                 .string();
            write_trace_csv(trace, out.trace_path, thin, cfg.include_intervals, cfg.k);

            json entry = summary_to_json(out.summary);
            entry["kappa"] = kappa;
            entry["replication"] = rep;
            entry["seed"] = seed;
            entry["alpha"] = hp.alpha;
            entry["epsilon"] = hp.epsilon;
            entry["trace"] = fs::path(out.trace_path).filename().string();
            summaries.push_back(entry);
            outcomes.push_back(std::move(out));
        }
    }

    json doc{{"scenario", to_string(cfg.scenario)},
             {"policy", to_string(cfg.policy)},
             {"k", cfg.k},
             {"T", cfg.T},
             {"seed", cfg.base_seed},
             {"replications", cfg.replications},
             {"thin", thin},
             {"runs", summaries}};
    const std::string summary_path = (fs::path(cfg.out_dir) / "summary.json").string();
    std::ofstream out(summary_path, std::ios::binary);
    if (!out) throw io_error("cannot open summary file for writing: " + summary_path);
    out << doc.dump(2) << "\n";
    return outcomes;
}

std::vector<ReplicationOutcome> sweep(const ExperimentConfig& cfg) {
    auto outcomes = run_experiment(cfg);

    const std::string path = (fs::path(cfg.out_dir) / "sweep.csv").string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open sweep file for writing: " + path);
    out << "kappa,mean_final_ratio,mean_final_regret,bound_B\n";
    for (double kappa : cfg.kappas) {
        double ratio_sum = 0.0;
        double regret_sum = 0.0;
        double bound = 0.0;
        int n = 0;
        for (const auto& o : outcomes) {
            if (o.kappa != kappa) continue;
            ratio_sum += o.summary.final_regret / o.summary.bound_B;
            regret_sum += o.summary.final_regret;
            bound = o.summary.bound_B;
            ++n;
        }
        std::string line;
        append_double(line, kappa);
        line += ',';
        append_double(line, ratio_sum / n);
        line += ',';
        append_double(line, regret_sum / n);
        line += ',';
        append_double(line, bound);
        out << line << "\n";
    }
    return outcomes;
}

AuditReport audit_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open trace file: " + path);

    std::string header;
    if (!std::getline(in, header)) throw io_error("empty trace file: " + path);

    AuditReport report;
    report.monotone_t = true;
    report.prefix_consistent = true;

    std::int64_t prev_t = 0;
    double prev_cum = 0.0;
    bool have_prev = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() < 9) throw io_error("malformed trace row: " + line);

        const std::int64_t t = std::stoll(fields[0]);
        const double inst = std::stod(fields[5]);
        const double cum = std::stod(fields[6]);
        if (have_prev && t <= prev_t) report.monotone_t = false;
        // Exact prefix sums are only recoverable from an unthinned trace;
        // for thinned rows verify consistency of the increments instead.
        if (have_prev) {
            if (t == prev_t + 1) {
                if (std::abs(prev_cum + inst - cum) > 1e-9 * std::max(1.0, cum)) {
                    report.prefix_consistent = false;
                }
            } else if (cum + 1e-12 < prev_cum) {
                report.prefix_consistent = false;
            }
        }
        if (fields[7] == "1") ++report.fairness_violations;
        if (fields[8] == "1") ++report.coverage_violations;
        prev_t = t;
        prev_cum = cum;
        have_prev = true;
        ++report.rows;
    }
    report.final_cum_regret = prev_cum;
    return report;
}

std::string to_json(const AuditReport& report) {
    json doc{{"rows", report.rows},
             {"monotone_t", report.monotone_t},
             {"prefix_consistent", report.prefix_consistent},
             {"fairness_violations", report.fairness_violations},
             {"coverage_violations", report.coverage_violations},
             {"final_cum_regret", report.final_cum_regret}};
    return doc.dump();
}

} // namespace fairucbe
