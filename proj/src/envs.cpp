#include "mab/envs.hpp"

#include <algorithm>
#include <stdexcept>

#include "mab/rng.hpp"

namespace mab {

BanditEnv::BanditEnv(std::vector<double> probs_, RewardScheme scheme)
    : probs(std::move(probs_)), reward_scheme(scheme) {
    if (probs.size() < 2) {
        throw std::invalid_argument("BanditEnv: need at least 2 arms");
    }
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("BanditEnv: arm probability outside [0, 1]");
        }
    }
    best_prob = *std::max_element(probs.begin(), probs.end());
}

PullResult pull(const BanditEnv& env, std::size_t arm, std::mt19937_64& rng) {
    if (arm >= env.num_arms()) {
        throw std::out_of_range("pull: arm index out of range");
    }
    const bool success = uniform_double(rng) < env.probs[arm];
    if (env.reward_scheme == RewardScheme::ZeroOne) {
        const double r = success ? 1.0 : 0.0;
        return {r, r};
    }
    const double raw = success ? 1.0 : -1.0;
    return {raw, (raw + 1.0) / 2.0};
}

std::vector<double> sample_uniform_arms(std::size_t k, std::mt19937_64& rng) {
    if (k < 2) {
        throw std::invalid_argument("sample_uniform_arms: k must be >= 2");
    }
    std::vector<double> probs(k);
    for (double& p : probs) {
        p = uniform_double(rng);
    }
    return probs;
}

std::vector<double> sample_normal_arms(std::size_t k, std::mt19937_64& rng) {
    if (k < 2) {
        throw std::invalid_argument("sample_normal_arms: k must be >= 2");
    }
    std::normal_distribution<double> dist(0.5, 0.1);
    std::vector<double> probs(k);
    for (double& p : probs) {
        do {
            p = dist(rng);
        } while (p < 0.0 || p > 1.0);
    }
    return probs;
}

std::vector<double> fixed_survival_arms(std::size_t k) {
    if (k < 2) {
        throw std::invalid_argument("fixed_survival_arms: k must be >= 2");
    }
    std::vector<double> probs(k, 0.45);
    probs[0] = 0.55;
    return probs;
}

SurvivalState::SurvivalState(std::int64_t initial)
    : budget(initial), initial_budget(initial) {
    if (initial <= 0) {
        throw std::invalid_argument("SurvivalState: initial budget must be positive");
    }
}

void step_survival(SurvivalState& state, int raw_reward) {
    if (state.ruined) {
        throw std::domain_error("step_survival: state is ruined");
    }
    if (raw_reward != 1 && raw_reward != -1) {
        throw std::domain_error("step_survival: reward must be +1 or -1");
    }
    state.budget += raw_reward;
    if (state.budget <= 0) {
        state.budget = 0;
        state.ruined = true;
    }
}

}  // namespace mab
