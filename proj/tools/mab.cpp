#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mab/config.hpp"
#include "mab/csv.hpp"
#include "mab/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

struct CommonFlags {
    std::string preset;
    std::string config_path;
    std::string out_dir = ".";
    std::int64_t trials = 0;  // 0 -> keep config value
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
    bool paper_scale = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--preset", flags.preset, "built-in experiment setup");
    cmd->add_option("--config", flags.config_path, "JSON config file");
    cmd->add_option("--trials", flags.trials, "override trial count");
    cmd->add_option("--seed", flags.seed, "override master seed")
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--threads", flags.threads, "worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out-dir", flags.out_dir, "output directory");
    cmd->add_flag("--paper-scale", flags.paper_scale,
                  "use published trial counts instead of desk-scale defaults");
}

mab::ParsedConfig resolve_config(const CommonFlags& flags) {
    if (flags.preset.empty() == flags.config_path.empty()) {
        throw std::invalid_argument("exactly one of --preset or --config required");
    }
    if (!flags.preset.empty()) {
        return mab::make_preset(flags.preset, flags.paper_scale);
    }
    return mab::parse_config_file(flags.config_path);
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) {
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                c == '.' || c == '_')
                   ? c
                   : '_';
    }
    return out;
}

// Deletes everything written so far; a failed run leaves no partial output.
struct OutputTracker {
    std::vector<fs::path> files;
    bool committed = false;

    void write(const fs::path& path, const std::string& content) {
        mab::write_file(path.string(), content);
        files.push_back(path);
    }
    ~OutputTracker() {
        if (committed) return;
        for (const auto& f : files) {
            std::error_code ec;
            fs::remove(f, ec);
        }
    }
};

json base_manifest(const CommonFlags& flags, double seconds) {
    json m;
    m["tool_version"] = kToolVersion;
    m["threads"] = flags.threads;
    m["duration_seconds"] = seconds;
    return m;
}

void print_experiment_summary(const mab::ExperimentConfig& config,
                              const std::vector<mab::AggregateCurve>& curves) {
    std::printf("%-28s %-15s %14s %12s\n", "policy", "metric", "final mean",
                "stderr");
    for (const auto& curve : curves) {
        const auto& s = curve.stats.back();
        std::printf("%-28s %-15s %14.6g %12.4g\n", curve.policy_id.c_str(),
                    curve.metric.c_str(), s.mean, s.stderr_of_mean);
    }
    std::printf("(%lld trials, horizon %lld, seed %llu)\n",
                static_cast<long long>(config.trials),
                static_cast<long long>(config.horizon),
                static_cast<unsigned long long>(config.master_seed));
}

int run_experiment_cmd(const CommonFlags& flags) {
    auto parsed = resolve_config(flags);
    auto* config = std::get_if<mab::ExperimentConfig>(&parsed);
    if (!config) {
        throw std::invalid_argument(
            "this config describes a sweep; use the sweep subcommand");
    }
    if (flags.trials > 0) config->trials = flags.trials;
    if (flags.seed_set) config->master_seed = flags.seed;
    config->validate();

    fs::create_directories(flags.out_dir);
    const auto start = std::chrono::steady_clock::now();
    const auto curves = mab::run_experiment(*config, flags.threads);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    OutputTracker out;
    json manifest = base_manifest(flags, seconds);
    manifest["experiment_id"] = config->experiment_id;
    manifest["master_seed"] = config->master_seed;
    manifest["config"] = mab::to_json(*config);
    manifest["outputs"] = json::object();

    for (const auto& policy : config->policies) {
        const std::string id = policy.id();
        std::vector<mab::AggregateCurve> policy_curves;
        for (const auto& c : curves) {
            if (c.policy_id == id) policy_curves.push_back(c);
        }
        const fs::path path = fs::path(flags.out_dir) /
                              (config->experiment_id + "__" + sanitize(id) + ".csv");
        out.write(path, mab::curves_csv(config->experiment_id, config->k,
                                        policy_curves));
        manifest["outputs"][id] = path.string();
    }
    const fs::path manifest_path =
        fs::path(flags.out_dir) / (config->experiment_id + "_manifest.json");
    out.write(manifest_path, manifest.dump(2) + "\n");
    out.committed = true;

    print_experiment_summary(*config, curves);
    std::printf("wrote %zu files under %s (%.1fs)\n", out.files.size(),
                flags.out_dir.c_str(), seconds);
    return 0;
}

int run_sweep_cmd(const CommonFlags& flags) {
    auto parsed = resolve_config(flags);
    auto* sweep = std::get_if<mab::SweepConfig>(&parsed);
    if (!sweep) {
        throw std::invalid_argument(
            "this config describes an experiment; use the experiment subcommand");
    }
    if (flags.trials > 0) sweep->base.trials = flags.trials;
    if (flags.seed_set) sweep->base.master_seed = flags.seed;
    sweep->validate();

    fs::create_directories(flags.out_dir);
    const auto start = std::chrono::steady_clock::now();
    const auto result = mab::run_sweep(*sweep, flags.threads);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    OutputTracker out;
    const fs::path grid_path =
        fs::path(flags.out_dir) / (sweep->base.experiment_id + "_grid.csv");
    out.write(grid_path, mab::grid_csv(result));

    json manifest = base_manifest(flags, seconds);
    manifest["experiment_id"] = sweep->base.experiment_id;
    manifest["master_seed"] = sweep->base.master_seed;
    manifest["config"] = mab::to_json(*sweep);
    manifest["outputs"] = {{"grid", grid_path.string()}};
    const fs::path manifest_path =
        fs::path(flags.out_dir) / (sweep->base.experiment_id + "_manifest.json");
    out.write(manifest_path, manifest.dump(2) + "\n");
    out.committed = true;

    const auto& best = result.cells[result.argmin];
    if (result.gwa_grid) {
        std::printf("argmin: alpha=%.4g m=%.4g mean_final_regret=%.6g\n",
                    best.alpha, best.m, best.mean_final_regret);
    } else {
        std::printf("argmin: c=%.4g mean_final_regret=%.6g\n", best.c,
                    best.mean_final_regret);
    }
    std::printf("%zu grid cells, wrote %s (%.1fs)\n", result.cells.size(),
                grid_path.string().c_str(), seconds);
    return 0;
}

int run_presets_cmd() {
    for (const auto& p : mab::preset_list()) {
        std::printf("%-22s %s\n", p.name.c_str(), p.description.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-armed bandit experiment runner"};
    app.require_subcommand(1);

    CommonFlags exp_flags;
    CLI::App* exp_cmd =
        app.add_subcommand("experiment", "run a bandit experiment, emit curve CSVs");
    add_common_flags(exp_cmd, exp_flags);

    CommonFlags sweep_flags;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "run a parameter grid sweep, emit a grid CSV");
    add_common_flags(sweep_cmd, sweep_flags);

    CLI::App* presets_cmd = app.add_subcommand("presets", "list built-in setups");

    CLI11_PARSE(app, argc, argv);

    try {
        if (exp_cmd->parsed()) return run_experiment_cmd(exp_flags);
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_flags);
        if (presets_cmd->parsed()) return run_presets_cmd();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
