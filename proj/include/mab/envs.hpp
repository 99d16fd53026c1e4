#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mab {

// ZeroOne: reward 1 w.p. p_i, else 0. PlusMinusOne: reward +1 w.p. p_i,
// else -1 (the survival game).
enum class RewardScheme { ZeroOne, PlusMinusOne };

struct BanditEnv {
    std::vector<double> probs;
    double best_prob = 0.0;
    RewardScheme reward_scheme = RewardScheme::ZeroOne;

    BanditEnv(std::vector<double> probs, RewardScheme scheme);
    std::size_t num_arms() const { return probs.size(); }
};

struct PullResult {
    double raw_reward;     // what the environment pays out
    double policy_reward;  // mapped to {0, 1} for the policy's statistics
};

PullResult pull(const BanditEnv& env, std::size_t arm, std::mt19937_64& rng);

std::vector<double> sample_uniform_arms(std::size_t k, std::mt19937_64& rng);

// Normal(0.5, 0.1) draws, rejection-resampled into [0, 1].
std::vector<double> sample_normal_arms(std::size_t k, std::mt19937_64& rng);

// One arm at 0.55 (index 0), the rest at 0.45. The simulator randomizes
// the best arm's position per trial.
std::vector<double> fixed_survival_arms(std::size_t k);

struct SurvivalState {
    std::int64_t budget = 0;
    std::int64_t initial_budget = 0;
    bool ruined = false;

    explicit SurvivalState(std::int64_t initial);
};

// b <- b + r; hitting 0 is ruin, after which the state is frozen.
void step_survival(SurvivalState& state, int raw_reward);

}  // namespace mab
