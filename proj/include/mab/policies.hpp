#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mab/means.hpp"

namespace mab {

enum class PolicyKind { Ucb1, Ucb1Tuned, GUcb1, GwaUcb1, Thompson, Random };

// A policy plus its parameters. stream_label names the random stream a
// trial of this policy consumes; it defaults to id() but can be shared
// across policies to pair their streams exactly (sweeps, trace tests).
struct PolicySpec {
    PolicyKind kind = PolicyKind::Ucb1;
    double c = 1.0;                // G-UCB1 exploration weight, >= 0
    GwaParams gwa_params{0.5, 1.0};  // GWA-UCB1 only
    std::string stream_label;      // empty -> id()

    std::string id() const;
    std::string stream() const { return stream_label.empty() ? id() : stream_label; }

    static PolicySpec ucb1();
    static PolicySpec ucb1_tuned();
    static PolicySpec g_ucb1(double c);
    static PolicySpec gwa_ucb1(double alpha, double m);
    static PolicySpec thompson();
    static PolicySpec random_baseline();
};

// Per-arm sufficient statistics. Individual rewards are never stored:
// every score needs only the pull count, reward sum and reward-square sum.
struct ArmStats {
    std::int64_t pulls = 0;
    double reward_sum = 0.0;
    double reward_sq_sum = 0.0;

    double mean() const { return reward_sum / static_cast<double>(pulls); }
};

struct PolicyState {
    PolicySpec spec;
    std::int64_t total_pulls = 0;
    std::vector<ArmStats> arms;

    PolicyState(PolicySpec spec, std::size_t num_arms);
    std::size_t num_arms() const { return arms.size(); }
};

// sqrt(2 ln n / pulls), the UCB1 exploration bonus. Natural log.
double exploration_bonus(std::int64_t total_pulls, std::int64_t pulls);

double ucb1_score(const ArmStats& stats, std::int64_t total_pulls);
double ucb1_tuned_score(const ArmStats& stats, std::int64_t total_pulls);
double g_ucb1_score(const ArmStats& stats, std::int64_t total_pulls, double c);
double gwa_ucb1_score(const ArmStats& stats, std::int64_t total_pulls,
                      const GwaParams& params);

// One draw from the Beta(successes+1, failures+1) posterior.
double thompson_sample(const ArmStats& stats, std::mt19937_64& rng);

// Unpulled arms are served first in ascending index order; afterwards the
// arm with the highest score wins, ties broken uniformly at random (the
// rng is consumed only when there is an actual tie).
std::size_t select_arm(const PolicyState& state, std::mt19937_64& rng);

void update(PolicyState& state, std::size_t arm, double observed_reward);

}  // namespace mab
