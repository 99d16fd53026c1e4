#include <cmath>
#include <random>

#include <doctest.h>

#include "mab/policies.hpp"
#include "mab/rng.hpp"

using namespace mab;

namespace {

ArmStats bernoulli_stats(std::int64_t pulls, std::int64_t successes) {
    ArmStats s;
    s.pulls = pulls;
    s.reward_sum = static_cast<double>(successes);
    s.reward_sq_sum = static_cast<double>(successes);
    return s;
}

// Straight-from-the-formula long-double evaluators.
long double ucb1_oracle(long double mean, long double pulls, long double n) {
    return mean + std::sqrt(2.0L * std::log(n) / pulls);
}

long double tuned_oracle(long double sum, long double sq, long double pulls,
                         long double n) {
    const long double mean = sum / pulls;
    const long double v =
        sq / pulls - mean * mean + std::sqrt(2.0L * std::log(n) / pulls);
    return mean + std::sqrt(std::log(n) / pulls * std::min(0.25L, v));
}

}  // namespace

TEST_CASE("ucb1_score worked examples") {
    CHECK(ucb1_score(bernoulli_stats(1, 0), 1) == 0.0);
    ArmStats s = bernoulli_stats(10, 5);
    CHECK(ucb1_score(s, 100) == doctest::Approx(1.459705182437616).epsilon(1e-12));
    CHECK(ucb1_score(bernoulli_stats(1, 1), 2) ==
          doctest::Approx(2.1774100225154747).epsilon(1e-12));
    CHECK_THROWS_AS(ucb1_score(ArmStats{}, 1), std::domain_error);
}

TEST_CASE("ucb1_tuned_score worked examples") {
    CHECK(ucb1_tuned_score(bernoulli_stats(1, 0), 1) == 0.0);
    // Rewards (1, 0, 1, 1): the variance bound exceeds 1/4 and is capped.
    CHECK(ucb1_tuned_score(bernoulli_stats(4, 3), 10) ==
          doctest::Approx(1.1293567823462866).epsilon(1e-12));
    CHECK(ucb1_tuned_score(bernoulli_stats(4, 4), 10) ==
          doctest::Approx(1.3793567823462866).epsilon(1e-12));
    CHECK_THROWS_AS(ucb1_tuned_score(ArmStats{}, 1), std::domain_error);
}

TEST_CASE("g_ucb1_score worked examples") {
    ArmStats s = bernoulli_stats(10, 5);
    CHECK(g_ucb1_score(s, 100, 0.0) == 0.5);
    CHECK(g_ucb1_score(s, 100, 1.0) == ucb1_score(s, 100));
    CHECK(g_ucb1_score(s, 100, 0.30) ==
          doctest::Approx(0.7879115547312849).epsilon(1e-12));
    CHECK_THROWS_AS(g_ucb1_score(s, 100, -0.1), std::domain_error);
}

TEST_CASE("gwa_ucb1_score worked examples") {
    ArmStats s = bernoulli_stats(10, 5);
    CHECK(gwa_ucb1_score(s, 100, {0.5, 1.0}) ==
          doctest::Approx(0.5 * ucb1_score(s, 100)).epsilon(1e-14));
    CHECK(gwa_ucb1_score(s, 100, {0.21, 1.30}) ==
          doctest::Approx(0.6046176966795761).epsilon(1e-12));
    ArmStats t = bernoulli_stats(10, 7);
    CHECK(gwa_ucb1_score(t, 100, {0.0, 1.0}) == 0.7);
}

TEST_CASE("scores agree with the straight-from-formula oracle") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t pulls = 1 + static_cast<std::int64_t>(rng() % 1000);
        const std::int64_t extra = static_cast<std::int64_t>(rng() % 5000);
        const std::int64_t n = pulls + extra;
        const std::int64_t wins = static_cast<std::int64_t>(rng() % (pulls + 1));
        const ArmStats s = bernoulli_stats(pulls, wins);

        const long double want1 = ucb1_oracle(s.mean(), pulls, n);
        CHECK(std::abs(ucb1_score(s, n) - want1) <=
              1e-12 * std::max<long double>(1.0L, std::abs(want1)));

        const long double want2 =
            tuned_oracle(s.reward_sum, s.reward_sq_sum, pulls, n);
        CHECK(std::abs(ucb1_tuned_score(s, n) - want2) <=
              1e-12 * std::max<long double>(1.0L, std::abs(want2)));
    }
}

TEST_CASE("ucb1_tuned variance bound is capped at 1/4") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 1000; ++i) {
        const std::int64_t pulls = 1 + static_cast<std::int64_t>(rng() % 200);
        const std::int64_t n = pulls + static_cast<std::int64_t>(rng() % 1000);
        const ArmStats s =
            bernoulli_stats(pulls, static_cast<std::int64_t>(rng() % (pulls + 1)));
        const double cap =
            s.mean() + std::sqrt(std::log(static_cast<double>(n)) /
                                 static_cast<double>(pulls) * 0.25);
        CHECK(ucb1_tuned_score(s, n) <= cap + 1e-15);
    }
}

TEST_CASE("bonus monotone in n, antitone in pulls") {
    for (std::int64_t pulls : {1, 3, 10, 50}) {
        const ArmStats s = bernoulli_stats(pulls, pulls / 2);
        double prev_ucb = -1.0, prev_tuned = -1.0, prev_g = -1.0;
        for (std::int64_t n = pulls; n < pulls + 100; ++n) {
            const double u = ucb1_score(s, n);
            const double t = ucb1_tuned_score(s, n);
            const double g = g_ucb1_score(s, n, 0.3);
            CHECK(u >= prev_ucb);
            CHECK(t >= prev_tuned);
            CHECK(g >= prev_g);
            prev_ucb = u;
            prev_tuned = t;
            prev_g = g;
        }
    }
    for (std::int64_t n : {3, 100, 10000}) {
        double prev = std::numeric_limits<double>::infinity();
        for (std::int64_t pulls = 1; pulls <= n; pulls += 7) {
            const ArmStats zero = bernoulli_stats(pulls, 0);
            const double u = ucb1_score(zero, n);
            CHECK(u <= prev);
            prev = u;
        }
    }
}

TEST_CASE("thompson_sample posterior behavior") {
    std::mt19937_64 rng(23);
    SUBCASE("fresh arm draws uniformly") {
        double lo = 1.0, hi = 0.0, sum = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            const double d = thompson_sample(ArmStats{}, rng);
            CHECK(d >= 0.0);
            CHECK(d <= 1.0);
            lo = std::min(lo, d);
            hi = std::max(hi, d);
            sum += d;
        }
        CHECK(lo < 0.01);
        CHECK(hi > 0.99);
        // Uniform mean 1/2, sd 1/sqrt(12): 3 standard errors.
        CHECK(std::abs(sum / n - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / n));
    }
    SUBCASE("posterior mean (s+1)/(s+f+2)") {
        const ArmStats s = bernoulli_stats(4, 3);
        const int n = 100000;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += thompson_sample(s, rng);
        // Beta(4, 2): mean 2/3, variance 8/(36*7).
        const double se = std::sqrt(8.0 / (36.0 * 7.0) / n);
        CHECK(std::abs(sum / n - 2.0 / 3.0) < 3.0 * se);
    }
    SUBCASE("seeded draws repeat") {
        std::mt19937_64 a(5), b(5);
        const ArmStats s = bernoulli_stats(7, 2);
        for (int i = 0; i < 100; ++i) {
            CHECK(thompson_sample(s, a) == thompson_sample(s, b));
        }
    }
}

TEST_CASE("update maintains sufficient statistics") {
    PolicyState state(PolicySpec::ucb1(), 3);
    update(state, 0, 1.0);
    CHECK(state.arms[0].pulls == 1);
    CHECK(state.arms[0].mean() == 1.0);
    update(state, 0, 0.0);
    CHECK(state.arms[0].mean() == 0.5);
    CHECK(state.arms[0].reward_sq_sum == 1.0);
    CHECK(state.total_pulls == 2);

    CHECK_THROWS_AS(update(state, 3, 1.0), std::out_of_range);
    CHECK_THROWS_AS(update(state, 1, 1.5), std::domain_error);
    CHECK_THROWS_AS(update(state, 1, -0.5), std::domain_error);

    std::mt19937_64 rng(24);
    std::int64_t expected = state.total_pulls;
    for (int i = 0; i < 200; ++i) {
        update(state, rng() % 3, uniform_double(rng));
        ++expected;
        std::int64_t total = 0;
        for (const auto& a : state.arms) total += a.pulls;
        CHECK(total == state.total_pulls);
        CHECK(state.total_pulls == expected);
    }
}

TEST_CASE("select_arm initialization order and tie-break") {
    std::mt19937_64 rng(25);
    SUBCASE("fresh arms served in ascending index order") {
        PolicyState state(PolicySpec::ucb1(), 3);
        for (std::size_t expected = 0; expected < 3; ++expected) {
            const std::size_t arm = select_arm(state, rng);
            CHECK(arm == expected);
            update(state, arm, 1.0);
        }
    }
    SUBCASE("exact ties split uniformly") {
        PolicyState state(PolicySpec::ucb1(), 2);
        update(state, 0, 1.0);
        update(state, 1, 1.0);
        int first = 0;
        const int n = 10000;
        for (int i = 0; i < n; ++i) {
            if (select_arm(state, rng) == 0) ++first;
        }
        const double freq = static_cast<double>(first) / n;
        CHECK(std::abs(freq - 0.5) < 3.0 * std::sqrt(0.25 / n));
    }
    SUBCASE("random baseline covers all arms") {
        PolicyState state(PolicySpec::random_baseline(), 4);
        std::vector<int> counts(4, 0);
        for (int i = 0; i < 4000; ++i) ++counts[select_arm(state, rng)];
        for (int c : counts) CHECK(c > 800);
    }
}

TEST_CASE("GWA(0.5, 1.0) and G-UCB1(c=1) trace UCB1 exactly") {
    // Shared arm probabilities and shared streams must give identical
    // action sequences; only the raw scores differ.
    const std::vector<double> probs = {0.8, 0.45, 0.5, 0.2};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        PolicyState ucb(PolicySpec::ucb1(), probs.size());
        PolicyState gwa_half(PolicySpec::gwa_ucb1(0.5, 1.0), probs.size());
        PolicyState g_one(PolicySpec::g_ucb1(1.0), probs.size());
        std::mt19937_64 r1(seed), r2(seed), r3(seed);
        for (int t = 0; t < 1000; ++t) {
            const std::size_t a1 = select_arm(ucb, r1);
            const std::size_t a2 = select_arm(gwa_half, r2);
            const std::size_t a3 = select_arm(g_one, r3);
            REQUIRE(a1 == a2);
            REQUIRE(a1 == a3);
            const double reward = uniform_double(r1) < probs[a1] ? 1.0 : 0.0;
            // Keep the streams aligned.
            uniform_double(r2);
            uniform_double(r3);
            update(ucb, a1, reward);
            update(gwa_half, a2, reward);
            update(g_one, a3, reward);
        }
    }
}

TEST_CASE("selection ignores positive score scaling") {
    // G-UCB1 with c=2 vs scores scaled by any positive constant: argmax
    // sets coincide, so paired streams pick identical arms.
    const std::vector<double> probs = {0.6, 0.55, 0.3};
    PolicyState base(PolicySpec::gwa_ucb1(0.5, 1.0), probs.size());
    PolicyState scaled(PolicySpec::ucb1(), probs.size());
    std::mt19937_64 r1(77), r2(77);
    for (int t = 0; t < 2000; ++t) {
        const std::size_t a = select_arm(base, r1);
        const std::size_t b = select_arm(scaled, r2);
        REQUIRE(a == b);
        const double reward = uniform_double(r1) < probs[a] ? 1.0 : 0.0;
        uniform_double(r2);
        update(base, a, reward);
        update(scaled, b, reward);
    }
}
