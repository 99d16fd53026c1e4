#include "mab/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string_view>
#include <thread>

#include "mab/rng.hpp"

namespace mab {

namespace {

constexpr std::string_view kEnvStreamLabel = "env";
constexpr std::string_view kRewardStreamLabel = "rewards";

std::vector<double> grid_values(double lo, double hi, double step) {
    std::vector<double> v;
    for (std::int64_t i = 0;; ++i) {
        const double x = lo + static_cast<double>(i) * step;
        if (x > hi + step * 1e-9) break;
        v.push_back(x);
    }
    return v;
}

CheckpointStat reduce_mean(const std::vector<double>& values) {
    CheckpointStat s;
    s.trials = static_cast<std::int64_t>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.trials);
    if (s.trials > 1) {
        double sq = 0.0;
        for (double v : values) {
            const double d = v - s.mean;
            sq += d * d;
        }
        const double sample_sd = std::sqrt(sq / static_cast<double>(s.trials - 1));
        s.stderr_of_mean = sample_sd / std::sqrt(static_cast<double>(s.trials));
    }
    return s;
}

// Runs fn(i) for i in [0, count) on `threads` workers. Rethrows the first
// failure. Work items only write to disjoint slots, so scheduling order
// does not affect results.
template <typename Fn>
void parallel_for(std::int64_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= count || failed.load()) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) error = std::current_exception();
                break;
            }
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<std::int64_t>(threads, count);
    pool.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<std::int64_t> decade_checkpoints(std::int64_t horizon) {
    std::vector<std::int64_t> cps;
    static constexpr std::int64_t mantissas[] = {1, 2, 5};
    for (std::int64_t decade = 1; decade <= horizon; decade *= 10) {
        for (std::int64_t m : mantissas) {
            const std::int64_t c = m * decade;
            if (c <= horizon) cps.push_back(c);
        }
    }
    if (cps.empty() || cps.back() != horizon) cps.push_back(horizon);
    return cps;
}

std::vector<std::int64_t> ExperimentConfig::effective_checkpoints() const {
    return checkpoints.empty() ? decade_checkpoints(horizon) : checkpoints;
}

void ExperimentConfig::validate() const {
    if (experiment_id.empty()) {
        throw std::invalid_argument("config: experiment_id must be nonempty");
    }
    if (k < 2) {
        throw std::invalid_argument("config: k must be >= 2");
    }
    if (horizon < static_cast<std::int64_t>(k)) {
        throw std::invalid_argument("config: horizon must be >= k");
    }
    if (trials < 1) {
        throw std::invalid_argument("config: trials must be >= 1");
    }
    if (policies.empty()) {
        throw std::invalid_argument("config: at least one policy required");
    }
    if (survival()) {
        if (reward_scheme != RewardScheme::PlusMinusOne) {
            throw std::invalid_argument(
                "config: survival experiments use the plus_minus_one scheme");
        }
        if (initial_budget <= 0) {
            throw std::invalid_argument("config: survival needs initial_budget > 0");
        }
    } else if (reward_scheme != RewardScheme::ZeroOne) {
        throw std::invalid_argument(
            "config: stochastic experiments use the zero_one scheme");
    }
    const auto cps = effective_checkpoints();
    std::int64_t prev = 0;
    for (std::int64_t c : cps) {
        if (c <= prev || c > horizon) {
            throw std::invalid_argument(
                "config: checkpoints must be strictly ascending within [1, horizon]");
        }
        prev = c;
    }
    if (cps.back() != horizon) {
        throw std::invalid_argument("config: last checkpoint must equal horizon");
    }
}

double pseudo_regret(const BanditEnv& env, std::span<const std::size_t> actions) {
    double total = 0.0;
    for (std::size_t a : actions) {
        if (a >= env.num_arms()) {
            throw std::out_of_range("pseudo_regret: arm index out of range");
        }
        total += env.best_prob - env.probs[a];
    }
    return total;
}

BanditEnv make_trial_env(const ExperimentConfig& config, std::int64_t trial_index) {
    auto rng = make_stream(config.master_seed, config.experiment_id,
                           kEnvStreamLabel, static_cast<std::uint64_t>(trial_index));
    std::vector<double> probs;
    switch (config.env_kind) {
        case EnvKind::Uniform:
            probs = sample_uniform_arms(config.k, rng);
            break;
        case EnvKind::Normal:
            probs = sample_normal_arms(config.k, rng);
            break;
        case EnvKind::SurvivalFixed:
            probs = fixed_survival_arms(config.k);
            // Randomize the best arm's position so it never interacts with
            // the index-ordered initialization phase.
            std::swap(probs[0], probs[uniform_below(rng, config.k)]);
            break;
    }
    return BanditEnv(std::move(probs), config.reward_scheme);
}

TrialRecord run_trial(const ExperimentConfig& config, const PolicySpec& spec,
                      std::int64_t trial_index,
                      std::vector<std::size_t>* actions_out) {
    config.validate();
    const BanditEnv env = make_trial_env(config, trial_index);
    auto rng = make_stream(config.master_seed, config.experiment_id, spec.stream(),
                           static_cast<std::uint64_t>(trial_index));
    // Reward realizations come from a policy-independent stream consumed once
    // per step, so paired trials share their luck (common random numbers) and
    // per-trial differences between policies reflect decisions only.
    auto reward_rng =
        make_stream(config.master_seed, config.experiment_id, kRewardStreamLabel,
                    static_cast<std::uint64_t>(trial_index));

    const auto cps = config.effective_checkpoints();
    TrialRecord rec;
    rec.policy_id = spec.id();
    rec.trial_index = trial_index;

    PolicyState state(spec, config.k);
    const bool survival = config.survival();
    SurvivalState budget_state(survival ? config.initial_budget : 1);

    double regret = 0.0;
    std::size_t next_cp = 0;
    for (std::int64_t t = 1; t <= config.horizon; ++t) {
        const std::size_t arm = select_arm(state, rng);
        const PullResult r = pull(env, arm, reward_rng);
        update(state, arm, r.policy_reward);
        if (actions_out) actions_out->push_back(arm);

        if (survival) {
            step_survival(budget_state, r.raw_reward > 0 ? 1 : -1);
        } else {
            regret += env.best_prob - env.probs[arm];
        }

        if (t == cps[next_cp]) {
            if (survival) {
                rec.survived_at_checkpoint.push_back(budget_state.ruined ? 0 : 1);
                rec.budget_at_checkpoint.push_back(budget_state.budget);
            } else {
                rec.regret_at_checkpoint.push_back(regret);
            }
            ++next_cp;
        }
        if (survival && budget_state.ruined) {
            // Ruin ends the trial; later checkpoints record the absorbed state.
            for (; next_cp < cps.size(); ++next_cp) {
                rec.survived_at_checkpoint.push_back(0);
                rec.budget_at_checkpoint.push_back(0);
            }
            break;
        }
    }
    return rec;
}

std::vector<AggregateCurve> run_experiment(const ExperimentConfig& config,
                                           int threads) {
    config.validate();
    const auto cps = config.effective_checkpoints();
    const std::int64_t trials = config.trials;
    const auto num_policies = static_cast<std::int64_t>(config.policies.size());

    std::vector<std::vector<TrialRecord>> records(
        static_cast<std::size_t>(num_policies));
    for (auto& v : records) v.resize(static_cast<std::size_t>(trials));

    parallel_for(num_policies * trials, threads, [&](std::int64_t item) {
        const auto p = static_cast<std::size_t>(item / trials);
        const std::int64_t trial = item % trials;
        records[p][static_cast<std::size_t>(trial)] =
            run_trial(config, config.policies[p], trial);
    });

    std::vector<AggregateCurve> curves;
    for (std::size_t p = 0; p < records.size(); ++p) {
        const std::string policy_id = config.policies[p].id();
        auto aggregate = [&](const std::string& metric, auto extract) {
            AggregateCurve curve;
            curve.policy_id = policy_id;
            curve.metric = metric;
            curve.checkpoints = cps;
            std::vector<double> values(static_cast<std::size_t>(trials));
            for (std::size_t c = 0; c < cps.size(); ++c) {
                for (std::size_t t = 0; t < values.size(); ++t) {
                    values[t] = extract(records[p][t], c);
                }
                curve.stats.push_back(reduce_mean(values));
            }
            curves.push_back(std::move(curve));
        };
        if (config.survival()) {
            aggregate("survival_rate", [](const TrialRecord& r, std::size_t c) {
                return static_cast<double>(r.survived_at_checkpoint[c]);
            });
            aggregate("mean_budget", [](const TrialRecord& r, std::size_t c) {
                return static_cast<double>(r.budget_at_checkpoint[c]);
            });
        } else {
            aggregate("regret", [](const TrialRecord& r, std::size_t c) {
                return r.regret_at_checkpoint[c];
            });
        }
    }
    return curves;
}

void SweepConfig::validate() const {
    if (gwa_grid) {
        if (!(alpha_step > 0.0) || !(m_step > 0.0)) {
            throw std::invalid_argument("sweep: grid steps must be positive");
        }
        if (alpha_min > alpha_max || m_min > m_max) {
            throw std::invalid_argument("sweep: grid ranges must be nonempty");
        }
    } else {
        if (!(c_step > 0.0)) {
            throw std::invalid_argument("sweep: grid steps must be positive");
        }
        if (c_min > c_max) {
            throw std::invalid_argument("sweep: grid ranges must be nonempty");
        }
    }
}

SweepResult run_sweep(const SweepConfig& sweep, int threads) {
    sweep.validate();

    std::vector<PolicySpec> cell_policies;
    SweepResult result;
    result.gwa_grid = sweep.gwa_grid;
    if (sweep.gwa_grid) {
        for (double a : grid_values(sweep.alpha_min, sweep.alpha_max, sweep.alpha_step)) {
            for (double m : grid_values(sweep.m_min, sweep.m_max, sweep.m_step)) {
                SweepCell cell;
                cell.alpha = a;
                cell.m = m;
                result.cells.push_back(cell);
                cell_policies.push_back(PolicySpec::gwa_ucb1(a, m));
            }
        }
    } else {
        for (double c : grid_values(sweep.c_min, sweep.c_max, sweep.c_step)) {
            SweepCell cell;
            cell.c = c;
            result.cells.push_back(cell);
            cell_policies.push_back(PolicySpec::g_ucb1(c));
        }
    }

    const auto n_cells = static_cast<std::int64_t>(result.cells.size());
    if (n_cells == 0) {
        throw std::invalid_argument("sweep: empty grid");
    }
    if (n_cells > sweep.max_cells) {
        throw std::invalid_argument(
            "sweep: grid has " + std::to_string(n_cells) +
            " cells, exceeding the configured budget of " +
            std::to_string(sweep.max_cells) +
            " (raise max_cells to run it anyway)");
    }

    // All cells share one stream label so trial seeds are paired across
    // the grid.
    for (auto& spec : cell_policies) spec.stream_label = "sweep";

    for (std::int64_t i = 0; i < n_cells; ++i) {
        ExperimentConfig config = sweep.base;
        config.policies = {cell_policies[static_cast<std::size_t>(i)]};
        const auto curves = run_experiment(config, threads);
        const CheckpointStat& final_stat = curves.front().stats.back();
        auto& cell = result.cells[static_cast<std::size_t>(i)];
        cell.mean_final_regret = final_stat.mean;
        cell.stderr_of_mean = final_stat.stderr_of_mean;
    }

    result.argmin = 0;
    for (std::size_t i = 1; i < result.cells.size(); ++i) {
        if (result.cells[i].mean_final_regret <
            result.cells[result.argmin].mean_final_regret) {
            result.argmin = i;
        }
    }
    return result;
}

}  // namespace mab
