#include "mab/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace mab {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& context) {
    if (!obj.is_object()) {
        throw std::invalid_argument("config: " + context + " must be an object");
    }
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key)) {
            throw std::invalid_argument("config: unknown key \"" + key + "\" in " +
                                        context);
        }
    }
}

template <typename T>
T get_required(const json& obj, const std::string& key, const std::string& context) {
    if (!obj.contains(key)) {
        throw std::invalid_argument("config: missing key \"" + key + "\" in " +
                                    context);
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw std::invalid_argument("config: bad value for \"" + key + "\" in " +
                                    context + ": " + e.what());
    }
}

template <typename T>
T get_or(const json& obj, const std::string& key, const std::string& context,
         T fallback) {
    return obj.contains(key) ? get_required<T>(obj, key, context) : fallback;
}

PolicySpec policy_from_json(const json& j) {
    check_keys(j, {"kind", "c", "alpha", "m"}, "policy");
    const auto kind = get_required<std::string>(j, "kind", "policy");
    try {
        if (kind == "ucb1") return PolicySpec::ucb1();
        if (kind == "ucb1_tuned") return PolicySpec::ucb1_tuned();
        if (kind == "thompson") return PolicySpec::thompson();
        if (kind == "random") return PolicySpec::random_baseline();
        if (kind == "g_ucb1") {
            return PolicySpec::g_ucb1(get_required<double>(j, "c", "policy"));
        }
        if (kind == "gwa_ucb1") {
            return PolicySpec::gwa_ucb1(get_required<double>(j, "alpha", "policy"),
                                        get_required<double>(j, "m", "policy"));
        }
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(std::string("config: invalid policy: ") +
                                    e.what());
    }
    throw std::invalid_argument("config: unknown policy kind \"" + kind + "\"");
}

struct Range {
    double min, max, step;
};

Range range_from_json(const json& j, const std::string& context) {
    check_keys(j, {"min", "max", "step"}, context);
    return {get_required<double>(j, "min", context),
            get_required<double>(j, "max", context),
            get_required<double>(j, "step", context)};
}

}  // namespace

ExperimentConfig experiment_from_json(const json& j, bool require_policies) {
    check_keys(j,
               {"type", "experiment_id", "k", "horizon", "trials", "env",
                "reward_scheme", "initial_budget", "policies", "master_seed",
                "checkpoints"},
               "experiment");
    ExperimentConfig c;
    c.experiment_id = get_required<std::string>(j, "experiment_id", "experiment");
    c.k = get_required<std::size_t>(j, "k", "experiment");
    c.horizon = get_required<std::int64_t>(j, "horizon", "experiment");
    c.trials = get_required<std::int64_t>(j, "trials", "experiment");
    c.master_seed = get_or<std::uint64_t>(j, "master_seed", "experiment", 42);

    const auto env = get_required<std::string>(j, "env", "experiment");
    if (env == "uniform") {
        c.env_kind = EnvKind::Uniform;
    } else if (env == "normal") {
        c.env_kind = EnvKind::Normal;
    } else if (env == "survival_fixed") {
        c.env_kind = EnvKind::SurvivalFixed;
    } else {
        throw std::invalid_argument("config: unknown env \"" + env + "\"");
    }

    const auto scheme = get_or<std::string>(
        j, "reward_scheme", "experiment",
        c.env_kind == EnvKind::SurvivalFixed ? "plus_minus_one" : "zero_one");
    if (scheme == "zero_one") {
        c.reward_scheme = RewardScheme::ZeroOne;
    } else if (scheme == "plus_minus_one") {
        c.reward_scheme = RewardScheme::PlusMinusOne;
    } else {
        throw std::invalid_argument("config: unknown reward_scheme \"" + scheme +
                                    "\"");
    }

    c.initial_budget = get_or<std::int64_t>(j, "initial_budget", "experiment", 0);
    c.checkpoints = get_or<std::vector<std::int64_t>>(j, "checkpoints",
                                                      "experiment", {});

    if (j.contains("policies")) {
        for (const auto& pj : j.at("policies")) {
            c.policies.push_back(policy_from_json(pj));
        }
    } else if (require_policies) {
        throw std::invalid_argument("config: missing key \"policies\" in experiment");
    }

    if (require_policies) {
        c.validate();
    }
    return c;
}

SweepConfig sweep_from_json(const json& j) {
    check_keys(j, {"type", "base", "grid", "max_cells"}, "sweep");
    SweepConfig s;
    if (!j.contains("base")) {
        throw std::invalid_argument("config: missing key \"base\" in sweep");
    }
    s.base = experiment_from_json(j.at("base"), /*require_policies=*/false);
    s.max_cells = get_or<std::int64_t>(j, "max_cells", "sweep", s.max_cells);

    if (!j.contains("grid")) {
        throw std::invalid_argument("config: missing key \"grid\" in sweep");
    }
    const json& grid = j.at("grid");
    if (grid.contains("c")) {
        check_keys(grid, {"c"}, "grid");
        s.gwa_grid = false;
        const Range r = range_from_json(grid.at("c"), "grid.c");
        s.c_min = r.min;
        s.c_max = r.max;
        s.c_step = r.step;
    } else {
        check_keys(grid, {"alpha", "m"}, "grid");
        if (!grid.contains("alpha") || !grid.contains("m")) {
            throw std::invalid_argument(
                "config: grid needs either \"c\" or both \"alpha\" and \"m\"");
        }
        s.gwa_grid = true;
        const Range ra = range_from_json(grid.at("alpha"), "grid.alpha");
        const Range rm = range_from_json(grid.at("m"), "grid.m");
        s.alpha_min = ra.min;
        s.alpha_max = ra.max;
        s.alpha_step = ra.step;
        s.m_min = rm.min;
        s.m_max = rm.max;
        s.m_step = rm.step;
    }
    s.validate();
    return s;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config: cannot open file " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("config: " + path + ": " + e.what());
    }
    const auto type = get_or<std::string>(j, "type", "document", "experiment");
    if (type == "experiment") {
        return experiment_from_json(j);
    }
    if (type == "sweep") {
        return sweep_from_json(j);
    }
    throw std::invalid_argument("config: unknown type \"" + type + "\"");
}

json to_json(const PolicySpec& spec) {
    json j;
    switch (spec.kind) {
        case PolicyKind::Ucb1: j["kind"] = "ucb1"; break;
        case PolicyKind::Ucb1Tuned: j["kind"] = "ucb1_tuned"; break;
        case PolicyKind::Thompson: j["kind"] = "thompson"; break;
        case PolicyKind::Random: j["kind"] = "random"; break;
        case PolicyKind::GUcb1:
            j["kind"] = "g_ucb1";
            j["c"] = spec.c;
            break;
        case PolicyKind::GwaUcb1:
            j["kind"] = "gwa_ucb1";
            j["alpha"] = spec.gwa_params.alpha();
            j["m"] = spec.gwa_params.m();
            break;
    }
    return j;
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["type"] = "experiment";
    j["experiment_id"] = c.experiment_id;
    j["k"] = c.k;
    j["horizon"] = c.horizon;
    j["trials"] = c.trials;
    switch (c.env_kind) {
        case EnvKind::Uniform: j["env"] = "uniform"; break;
        case EnvKind::Normal: j["env"] = "normal"; break;
        case EnvKind::SurvivalFixed: j["env"] = "survival_fixed"; break;
    }
    j["reward_scheme"] = c.reward_scheme == RewardScheme::ZeroOne
                             ? "zero_one"
                             : "plus_minus_one";
    if (c.survival()) j["initial_budget"] = c.initial_budget;
    j["master_seed"] = c.master_seed;
    j["checkpoints"] = c.effective_checkpoints();
    j["policies"] = json::array();
    for (const auto& p : c.policies) j["policies"].push_back(to_json(p));
    return j;
}

json to_json(const SweepConfig& s) {
    json j;
    j["type"] = "sweep";
    j["base"] = to_json(s.base);
    j["base"].erase("policies");
    j["base"].erase("type");
    j["max_cells"] = s.max_cells;
    if (s.gwa_grid) {
        j["grid"]["alpha"] = {{"min", s.alpha_min}, {"max", s.alpha_max},
                              {"step", s.alpha_step}};
        j["grid"]["m"] = {{"min", s.m_min}, {"max", s.m_max}, {"step", s.m_step}};
    } else {
        j["grid"]["c"] = {{"min", s.c_min}, {"max", s.c_max}, {"step", s.c_step}};
    }
    return j;
}

namespace {

std::vector<PolicySpec> tuned_policy_set() {
    return {PolicySpec::ucb1(), PolicySpec::ucb1_tuned(), PolicySpec::g_ucb1(0.30),
            PolicySpec::gwa_ucb1(0.21, 1.30), PolicySpec::thompson()};
}

ExperimentConfig exp1(std::size_t k, bool paper_scale) {
    ExperimentConfig c;
    c.experiment_id = "exp1-k" + std::to_string(k);
    c.k = k;
    c.horizon = 10000;
    c.trials = paper_scale ? 100000 : 2000;
    c.env_kind = EnvKind::Uniform;
    c.policies = tuned_policy_set();
    return c;
}

ExperimentConfig exp2(std::size_t k, bool paper_scale) {
    ExperimentConfig c;
    c.experiment_id = "exp2-k" + std::to_string(k);
    c.k = k;
    c.horizon = 50000;
    c.trials = paper_scale ? 10000 : 500;
    c.env_kind = EnvKind::Normal;
    c.policies = tuned_policy_set();
    return c;
}

ExperimentConfig exp3(std::size_t k, std::int64_t budget, bool paper_scale) {
    ExperimentConfig c;
    c.experiment_id = "exp3-k" + std::to_string(k);
    c.k = k;
    c.horizon = 50000;
    c.trials = paper_scale ? 10000 : 500;
    c.env_kind = EnvKind::SurvivalFixed;
    c.reward_scheme = RewardScheme::PlusMinusOne;
    c.initial_budget = budget;
    c.policies = tuned_policy_set();
    return c;
}

ExperimentConfig fig8(bool paper_scale) {
    (void)paper_scale;  // the published run is already desk scale
    ExperimentConfig c;
    c.experiment_id = "fig8-k10";
    c.k = 10;
    c.horizon = 1000;
    c.trials = 2000;
    c.env_kind = EnvKind::Uniform;
    c.policies = {PolicySpec::gwa_ucb1(0.11, 1.47), PolicySpec::gwa_ucb1(0.21, 1.30),
                  PolicySpec::thompson()};
    return c;
}

ExperimentConfig sweep_base(const std::string& id, std::int64_t horizon,
                            std::int64_t trials) {
    ExperimentConfig c;
    c.experiment_id = id;
    c.k = 2;
    c.horizon = horizon;
    c.trials = trials;
    c.env_kind = EnvKind::Uniform;
    return c;
}

SweepConfig prelim_gucb1(bool coarse, bool paper_scale) {
    SweepConfig s;
    s.gwa_grid = false;
    s.c_min = 0.05;
    s.c_max = 0.95;
    if (coarse) {
        s.base = sweep_base("prelim-gucb1-coarse", 5000, 500);
        s.c_step = 0.05;
    } else {
        s.base = sweep_base("prelim-gucb1", 10000, paper_scale ? 1000 : 500);
        s.c_step = 0.01;
    }
    return s;
}

SweepConfig prelim_gwa(bool coarse, bool paper_scale) {
    SweepConfig s;
    s.gwa_grid = true;
    s.alpha_min = 0.05;
    s.alpha_max = 0.95;
    s.m_min = -2.0;
    s.m_max = 4.0;
    if (coarse) {
        s.base = sweep_base("prelim-gwa-coarse", 5000, 500);
        s.alpha_step = 0.04;
        s.m_step = 0.20;
    } else {
        s.base = sweep_base("prelim-gwa", 10000, paper_scale ? 1000 : 500);
        s.alpha_step = 0.01;
        s.m_step = 0.01;
        s.max_cells = 60000;  // 91 x 601 grid; explicit opt-in to its cost
    }
    return s;
}

}  // namespace

std::vector<PresetInfo> preset_list() {
    return {
        {"exp1-k2", "uniform arms, k=2, horizon 10000, tuned policy set"},
        {"exp1-k8", "uniform arms, k=8, horizon 10000, tuned policy set"},
        {"exp1-k32", "uniform arms, k=32, horizon 10000, tuned policy set"},
        {"exp2-k32", "Normal(0.5,0.1) arms, k=32, horizon 50000"},
        {"exp2-k128", "Normal(0.5,0.1) arms, k=128, horizon 50000"},
        {"exp2-k512", "Normal(0.5,0.1) arms, k=512, horizon 50000"},
        {"exp3-k8", "survival, k=8, one 0.55 arm, b0=80, horizon 50000"},
        {"exp3-k32", "survival, k=32, one 0.55 arm, b0=320, horizon 50000"},
        {"exp3-k128", "survival, k=128, one 0.55 arm, b0=1280, horizon 50000"},
        {"fig8-k10", "uniform arms, k=10, horizon 1000, tuned GWA pairs vs Thompson"},
        {"prelim-gucb1", "c grid [0.05,0.95] step 0.01, k=2"},
        {"prelim-gucb1-coarse", "c grid step 0.05, k=2, horizon 5000"},
        {"prelim-gwa", "(alpha,m) grid step 0.01, k=2 (large)"},
        {"prelim-gwa-coarse",
         "(alpha,m) grid steps 0.04/0.20, k=2, horizon 5000"},
    };
}

ParsedConfig make_preset(const std::string& name, bool paper_scale) {
    if (name == "exp1-k2") return exp1(2, paper_scale);
    if (name == "exp1-k8") return exp1(8, paper_scale);
    if (name == "exp1-k32") return exp1(32, paper_scale);
    if (name == "exp2-k32") return exp2(32, paper_scale);
    if (name == "exp2-k128") return exp2(128, paper_scale);
    if (name == "exp2-k512") return exp2(512, paper_scale);
    if (name == "exp3-k8") return exp3(8, 80, paper_scale);
    if (name == "exp3-k32") return exp3(32, 320, paper_scale);
    if (name == "exp3-k128") return exp3(128, 1280, paper_scale);
    if (name == "fig8-k10") return fig8(paper_scale);
    if (name == "prelim-gucb1") return prelim_gucb1(false, paper_scale);
    if (name == "prelim-gucb1-coarse") return prelim_gucb1(true, paper_scale);
    if (name == "prelim-gwa") return prelim_gwa(false, paper_scale);
    if (name == "prelim-gwa-coarse") return prelim_gwa(true, paper_scale);
    throw std::invalid_argument("unknown preset \"" + name +
                                "\" (see the presets subcommand)");
}

}  // namespace mab
