#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mab/envs.hpp"
#include "mab/policies.hpp"

namespace mab {

enum class EnvKind { Uniform, Normal, SurvivalFixed };

// 1-2-5 decade series capped at horizon, horizon always included.
std::vector<std::int64_t> decade_checkpoints(std::int64_t horizon);

struct ExperimentConfig {
    std::string experiment_id;
    std::size_t k = 2;
    std::int64_t horizon = 0;
    std::int64_t trials = 1;
    EnvKind env_kind = EnvKind::Uniform;
    RewardScheme reward_scheme = RewardScheme::ZeroOne;
    std::int64_t initial_budget = 0;  // survival only
    std::vector<PolicySpec> policies;
    std::uint64_t master_seed = 0;
    std::vector<std::int64_t> checkpoints;  // empty -> decade_checkpoints(horizon)

    bool survival() const { return env_kind == EnvKind::SurvivalFixed; }
    std::vector<std::int64_t> effective_checkpoints() const;
    void validate() const;
};

struct TrialRecord {
    std::string policy_id;
    std::int64_t trial_index = 0;
    // Stochastic runs fill regret_at_checkpoint; survival runs fill the
    // survived/budget pair. Indices follow the checkpoint list.
    std::vector<double> regret_at_checkpoint;
    std::vector<char> survived_at_checkpoint;
    std::vector<std::int64_t> budget_at_checkpoint;
};

struct CheckpointStat {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    std::int64_t trials = 0;
};

struct AggregateCurve {
    std::string policy_id;
    std::string metric;  // "regret", "survival_rate" or "mean_budget"
    std::vector<std::int64_t> checkpoints;
    std::vector<CheckpointStat> stats;
};

// Cumulative expected-reward gap to the best arm (pseudo-regret).
double pseudo_regret(const BanditEnv& env, std::span<const std::size_t> actions);

// One complete game. Deterministic in (config, spec, trial_index): the
// environment stream ("env" label) and the per-step reward stream
// ("rewards" label, one draw per step) are policy-independent, so paired
// trials share both the arm probabilities and the reward luck; only the
// decision stream derives from spec.stream().
// When actions_out is nonnull the full action trace is appended to it.
TrialRecord run_trial(const ExperimentConfig& config, const PolicySpec& spec,
                      std::int64_t trial_index,
                      std::vector<std::size_t>* actions_out = nullptr);

// Environment a given trial of the experiment would see (probabilities
// already permuted for the survival game).
BanditEnv make_trial_env(const ExperimentConfig& config, std::int64_t trial_index);

// Runs trials x policies, optionally on several worker threads, and
// reduces records in ascending trial order so the output is independent
// of the thread count. Stochastic runs yield one "regret" curve per
// policy; survival runs yield "survival_rate" and "mean_budget" curves.
std::vector<AggregateCurve> run_experiment(const ExperimentConfig& config,
                                           int threads = 1);

struct SweepConfig {
    ExperimentConfig base;  // its policies list is ignored
    bool gwa_grid = true;   // false -> one-dimensional c grid
    double c_min = 0.05, c_max = 0.95, c_step = 0.01;
    double alpha_min = 0.05, alpha_max = 0.95, alpha_step = 0.01;
    double m_min = -2.0, m_max = 4.0, m_step = 0.01;
    std::int64_t max_cells = 5000;

    void validate() const;
};

struct SweepCell {
    double c = 0.0;      // c grid
    double alpha = 0.0;  // gwa grid
    double m = 0.0;
    double mean_final_regret = 0.0;
    double stderr_of_mean = 0.0;
};

struct SweepResult {
    bool gwa_grid = true;
    std::vector<SweepCell> cells;  // sorted by c, or by (alpha, m)
    std::size_t argmin = 0;
};

// One run_experiment per grid point, with the decision stream label fixed
// across cells so all cells share trial seeds (paired comparison).
SweepResult run_sweep(const SweepConfig& sweep, int threads = 1);

}  // namespace mab
