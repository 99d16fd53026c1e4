#include <algorithm>

#include <doctest.h>

#include "mab/config.hpp"
#include "mab/csv.hpp"

using namespace mab;
using nlohmann::json;

TEST_CASE("built-in presets match the published setups") {
    SUBCASE("exp1-k2") {
        const ParsedConfig parsed = make_preset("exp1-k2");
        const auto& c = std::get<ExperimentConfig>(parsed);
        CHECK(c.k == 2);
        CHECK(c.horizon == 10000);
        CHECK(c.env_kind == EnvKind::Uniform);
        REQUIRE(c.policies.size() == 5);
        CHECK(c.policies[2].c == 0.30);
        CHECK(c.policies[3].gwa_params.alpha() == 0.21);
        CHECK(c.policies[3].gwa_params.m() == 1.30);
    }
    SUBCASE("exp3-k8") {
        const ParsedConfig parsed = make_preset("exp3-k8");
        const auto& c = std::get<ExperimentConfig>(parsed);
        CHECK(c.k == 8);
        CHECK(c.horizon == 50000);
        CHECK(c.env_kind == EnvKind::SurvivalFixed);
        CHECK(c.reward_scheme == RewardScheme::PlusMinusOne);
        CHECK(c.initial_budget == 80);
    }
    SUBCASE("fig8-k10 carries the environment-tuned pair") {
        const ParsedConfig parsed = make_preset("fig8-k10");
        const auto& c = std::get<ExperimentConfig>(parsed);
        CHECK(c.k == 10);
        CHECK(c.horizon == 1000);
        CHECK(c.trials == 2000);
        CHECK(c.policies[0].gwa_params.alpha() == 0.11);
        CHECK(c.policies[0].gwa_params.m() == 1.47);
    }
    SUBCASE("paper scale restores published trial counts") {
        const ParsedConfig parsed = make_preset("exp1-k8", /*paper_scale=*/true);
        const auto& c = std::get<ExperimentConfig>(parsed);
        CHECK(c.trials == 100000);
    }
    SUBCASE("sweeps") {
        const ParsedConfig sweep_parsed = make_preset("prelim-gwa-coarse");
        const auto& s = std::get<SweepConfig>(sweep_parsed);
        CHECK(s.gwa_grid);
        CHECK(s.alpha_step == 0.04);
        CHECK(s.m_step == 0.20);
        CHECK(s.base.k == 2);
        const ParsedConfig g_parsed = make_preset("prelim-gucb1");
        const auto& g = std::get<SweepConfig>(g_parsed);
        CHECK_FALSE(g.gwa_grid);
        CHECK(g.c_step == 0.01);
    }
    CHECK_THROWS_AS(make_preset("nope"), std::invalid_argument);
    CHECK(preset_list().size() >= 10);
}

TEST_CASE("experiment config round-trips through JSON") {
    for (const char* name : {"exp1-k2", "exp3-k8", "fig8-k10"}) {
        const ParsedConfig parsed = make_preset(name);
        const auto& c = std::get<ExperimentConfig>(parsed);
        const json j = to_json(c);
        const ExperimentConfig back = experiment_from_json(j);
        CHECK(to_json(back) == j);
    }
    const ParsedConfig sweep_parsed = make_preset("prelim-gucb1-coarse");
    const auto& s = std::get<SweepConfig>(sweep_parsed);
    const json j = to_json(s);
    json jj = j;
    jj["base"]["type"] = "experiment";  // sweep bases omit type/policies
    const SweepConfig back = sweep_from_json(jj);
    CHECK(to_json(back) == j);
}

TEST_CASE("strict config parsing") {
    const ParsedConfig good_parsed = make_preset("exp1-k2");
    json good = to_json(std::get<ExperimentConfig>(good_parsed));

    SUBCASE("unknown top-level key") {
        json bad = good;
        bad["horizonn"] = 5;
        CHECK_THROWS_WITH_AS(experiment_from_json(bad),
                             doctest::Contains("horizonn"), std::invalid_argument);
    }
    SUBCASE("unknown policy key") {
        json bad = good;
        bad["policies"][0]["gamma"] = 0.2;
        CHECK_THROWS_AS(experiment_from_json(bad), std::invalid_argument);
    }
    SUBCASE("invariant violations reported") {
        json bad = good;
        bad["policies"].push_back({{"kind", "gwa_ucb1"}, {"alpha", 1.5}, {"m", 1.0}});
        CHECK_THROWS_AS(experiment_from_json(bad), std::invalid_argument);
        bad = good;
        bad["k"] = 1;
        CHECK_THROWS_AS(experiment_from_json(bad), std::invalid_argument);
    }
    SUBCASE("missing required key") {
        json bad = good;
        bad.erase("horizon");
        CHECK_THROWS_WITH_AS(experiment_from_json(bad),
                             doctest::Contains("horizon"), std::invalid_argument);
    }
    CHECK_THROWS_AS(parse_config_file("/no/such/file.json"),
                    std::invalid_argument);
}

TEST_CASE("doubles render with round-trip precision") {
    for (double v : {0.1, 1.0 / 3.0, 12345.6789, 1e-300, 0.0, 4567.0}) {
        CHECK(parse_double(format_double(v)) == v);
    }
}

TEST_CASE("curve CSV layout") {
    ExperimentConfig c;
    c.experiment_id = "layout";
    c.k = 2;
    c.horizon = 10000;
    c.trials = 2;
    c.env_kind = EnvKind::Uniform;
    c.policies = {PolicySpec::ucb1()};
    c.checkpoints = {1, 10000};

    SUBCASE("stochastic: one row per checkpoint") {
        const auto curves = run_experiment(c);
        const std::string csv = curves_csv("layout", 2, curves);
        CHECK(csv.rfind("experiment_id,policy,k,checkpoint_step,metric,mean,stderr,"
                        "trials\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 rows
        // Round-trip the mean field of the first data row.
        std::size_t start = csv.find('\n') + 1;
        std::string row = csv.substr(start, csv.find('\n', start) - start);
        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (pos != std::string::npos) {
            const auto comma = row.find(',', pos);
            fields.push_back(row.substr(pos, comma - pos));
            pos = comma == std::string::npos ? comma : comma + 1;
        }
        REQUIRE(fields.size() == 8);
        CHECK(fields[0] == "layout");
        CHECK(fields[4] == "regret");
        CHECK(parse_double(fields[5]) == curves[0].stats[0].mean);
    }
    SUBCASE("survival: two metrics double the rows") {
        c.env_kind = EnvKind::SurvivalFixed;
        c.reward_scheme = RewardScheme::PlusMinusOne;
        c.initial_budget = 320;
        const std::string csv = curves_csv("layout", 2, run_experiment(c));
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 rows
        CHECK(csv.find("mean_budget") != std::string::npos);
        CHECK(csv.find("survival_rate") != std::string::npos);
    }
    SUBCASE("rows sorted by policy then checkpoint") {
        c.policies = {PolicySpec::ucb1(), PolicySpec::g_ucb1(0.3)};
        const std::string csv = curves_csv("layout", 2, run_experiment(c));
        CHECK(csv.find("g-ucb1") < csv.find("ucb1,"));
    }
}

TEST_CASE("grid CSV layout") {
    SweepResult r;
    r.gwa_grid = true;
    r.cells = {{0, 0.05, -2.0, 123.5, 1.25}, {0, 0.05, -1.8, 100.25, 1.5}};
    r.argmin = 1;
    const std::string csv = grid_csv(r);
    CHECK(csv == "alpha,m,mean_final_regret,stderr\n"
                 "0.05,-2,123.5,1.25\n"
                 "0.05,-1.8,100.25,1.5\n");
    SweepResult c;
    c.gwa_grid = false;
    c.cells = {{0.3, 0, 0, 42.0, 0.5}};
    CHECK(grid_csv(c) == "c,mean_final_regret,stderr\n0.3,42,0.5\n");
}
