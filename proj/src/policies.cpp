#include "mab/policies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mab/rng.hpp"

namespace mab {

namespace {

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

void require_pulled(const ArmStats& stats, std::int64_t total_pulls) {
    if (stats.pulls < 1) {
        throw std::domain_error("score: arm has no pulls");
    }
    if (total_pulls < 1) {
        throw std::domain_error("score: total pull count must be >= 1");
    }
}

}  // namespace

std::string PolicySpec::id() const {
    switch (kind) {
        case PolicyKind::Ucb1: return "ucb1";
        case PolicyKind::Ucb1Tuned: return "ucb1-tuned";
        case PolicyKind::GUcb1: return "g-ucb1(c=" + fmt2(c) + ")";
        case PolicyKind::GwaUcb1:
            return "gwa-ucb1(a=" + fmt2(gwa_params.alpha()) +
                   ",m=" + fmt2(gwa_params.m()) + ")";
        case PolicyKind::Thompson: return "thompson";
        case PolicyKind::Random: return "random";
    }
    throw std::logic_error("PolicySpec: unknown kind");
}

PolicySpec PolicySpec::ucb1() {
    PolicySpec s;
    s.kind = PolicyKind::Ucb1;
    return s;
}
PolicySpec PolicySpec::ucb1_tuned() {
    PolicySpec s;
    s.kind = PolicyKind::Ucb1Tuned;
    return s;
}

PolicySpec PolicySpec::g_ucb1(double c) {
    if (!(c >= 0.0)) {
        throw std::domain_error("g_ucb1: c must be >= 0");
    }
    PolicySpec s;
    s.kind = PolicyKind::GUcb1;
    s.c = c;
    return s;
}

PolicySpec PolicySpec::gwa_ucb1(double alpha, double m) {
    PolicySpec s;
    s.kind = PolicyKind::GwaUcb1;
    s.gwa_params = GwaParams(alpha, m);
    return s;
}

PolicySpec PolicySpec::thompson() {
    PolicySpec s;
    s.kind = PolicyKind::Thompson;
    return s;
}
PolicySpec PolicySpec::random_baseline() {
    PolicySpec s;
    s.kind = PolicyKind::Random;
    return s;
}

PolicyState::PolicyState(PolicySpec spec_, std::size_t num_arms)
    : spec(std::move(spec_)), arms(num_arms) {
    if (num_arms < 2) {
        throw std::invalid_argument("PolicyState: need at least 2 arms");
    }
}

double exploration_bonus(std::int64_t total_pulls, std::int64_t pulls) {
    return std::sqrt(2.0 * std::log(static_cast<double>(total_pulls)) /
                     static_cast<double>(pulls));
}

double ucb1_score(const ArmStats& stats, std::int64_t total_pulls) {
    require_pulled(stats, total_pulls);
    return stats.mean() + exploration_bonus(total_pulls, stats.pulls);
}

double ucb1_tuned_score(const ArmStats& stats, std::int64_t total_pulls) {
    require_pulled(stats, total_pulls);
    const double s = static_cast<double>(stats.pulls);
    const double log_n = std::log(static_cast<double>(total_pulls));
    const double mean = stats.mean();
    const double variance_bound =
        stats.reward_sq_sum / s - mean * mean + std::sqrt(2.0 * log_n / s);
    return mean + std::sqrt((log_n / s) * std::min(0.25, variance_bound));
}

double g_ucb1_score(const ArmStats& stats, std::int64_t total_pulls, double c) {
    require_pulled(stats, total_pulls);
    if (!(c >= 0.0)) {
        throw std::domain_error("g_ucb1_score: c must be >= 0");
    }
    return stats.mean() + c * exploration_bonus(total_pulls, stats.pulls);
}

double gwa_ucb1_score(const ArmStats& stats, std::int64_t total_pulls,
                      const GwaParams& params) {
    require_pulled(stats, total_pulls);
    return gwa(stats.mean(), exploration_bonus(total_pulls, stats.pulls), params);
}

double thompson_sample(const ArmStats& stats, std::mt19937_64& rng) {
    const double successes = stats.reward_sum;
    const double failures = static_cast<double>(stats.pulls) - stats.reward_sum;
    std::gamma_distribution<double> ga(successes + 1.0, 1.0);
    std::gamma_distribution<double> gb(failures + 1.0, 1.0);
    const double a = ga(rng);
    const double b = gb(rng);
    return a / (a + b);
}

std::size_t select_arm(const PolicyState& state, std::mt19937_64& rng) {
    const std::size_t k = state.num_arms();

    if (state.spec.kind == PolicyKind::Random) {
        return static_cast<std::size_t>(uniform_below(rng, k));
    }

    for (std::size_t i = 0; i < k; ++i) {
        if (state.arms[i].pulls == 0) {
            return i;
        }
    }

    auto score = [&](std::size_t i) {
        const ArmStats& a = state.arms[i];
        switch (state.spec.kind) {
            case PolicyKind::Ucb1: return ucb1_score(a, state.total_pulls);
            case PolicyKind::Ucb1Tuned: return ucb1_tuned_score(a, state.total_pulls);
            case PolicyKind::GUcb1:
                return g_ucb1_score(a, state.total_pulls, state.spec.c);
            case PolicyKind::GwaUcb1:
                return gwa_ucb1_score(a, state.total_pulls, state.spec.gwa_params);
            case PolicyKind::Thompson: return thompson_sample(a, rng);
            case PolicyKind::Random: break;
        }
        throw std::logic_error("select_arm: unknown policy kind");
    };

    // Scratch buffer reused across calls; selection runs every step of
    // every trial, so per-call allocation is off the table.
    thread_local std::vector<double> scores;
    scores.resize(k);
    double best = scores[0] = score(0);
    std::size_t best_arm = 0;
    std::size_t num_ties = 1;
    for (std::size_t i = 1; i < k; ++i) {
        const double s = scores[i] = score(i);
        if (s > best) {
            best = s;
            best_arm = i;
            num_ties = 1;
        } else if (s == best) {
            ++num_ties;
        }
    }
    if (num_ties == 1) {
        return best_arm;
    }
    std::uint64_t pick = uniform_below(rng, num_ties);
    for (std::size_t i = best_arm;; ++i) {
        if (scores[i] == best && pick-- == 0) {
            return i;
        }
    }
}

void update(PolicyState& state, std::size_t arm, double observed_reward) {
    if (arm >= state.num_arms()) {
        throw std::out_of_range("update: arm index out of range");
    }
    if (!(observed_reward >= 0.0 && observed_reward <= 1.0)) {
        throw std::domain_error("update: reward must be in [0, 1]");
    }
    ArmStats& a = state.arms[arm];
    a.pulls += 1;
    a.reward_sum += observed_reward;
    a.reward_sq_sum += observed_reward * observed_reward;
    state.total_pulls += 1;
}

}  // namespace mab
