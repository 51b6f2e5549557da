// Scenario runner for the blockchain-coordinated bandit simulator: single
// runs with per-seed CSV/JSON output, and horizon sweeps with a log-scaling
// report.

#include <algorithm>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bcmab/config.hpp"
#include "bcmab/presets.hpp"
#include "bcmab/sweep.hpp"

namespace fs = std::filesystem;
using namespace bcmab;

namespace {

std::vector<uint64_t> parse_seeds(const std::string& text) {
    std::vector<uint64_t> seeds;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        auto dots = token.find("..");
        if (dots != std::string::npos) {
            uint64_t lo = std::stoull(token.substr(0, dots));
            uint64_t hi = std::stoull(token.substr(dots + 2));
            for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        } else if (!token.empty()) {
            seeds.push_back(std::stoull(token));
        }
    }
    return seeds;
}

// horizon < 0 keeps the config document's own horizon.
ScenarioConfig base_scenario(const std::string& preset, const std::string& config_path,
                             int64_t horizon, uint64_t seed,
                             std::vector<std::string>* audit) {
    if (!preset.empty() && !config_path.empty())
        throw ConfigError("give either --preset or --config, not both");
    if (preset.empty() && config_path.empty())
        throw ConfigError("one of --preset or --config is required");
    if (!preset.empty()) return make_preset(preset, horizon > 0 ? horizon : 2000, seed);
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    LoadedScenario loaded = load_scenario(buf.str());
    if (audit) *audit = loaded.applied_defaults;
    ScenarioConfig cfg = loaded.config;
    if (horizon > 0 && horizon != cfg.horizon) {
        cfg.horizon = horizon;
        cfg.burn_in = default_burn_in(cfg.num_arms, horizon, cfg.burn_in_multiplier);
    }
    cfg.master_seed = seed;
    validate_scenario(cfg);
    return cfg;
}

fs::path output_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("BCMAB_OUT")) return env;
    return "out";
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"blockchain-coordinated multi-armed bandit simulator"};
    app.require_subcommand(1);

    std::string preset, config_path, seeds_text = "1", out_flag, horizons_text;
    int64_t horizon = 2000;
    int jobs = 1;
    bool with_chain = false;
    CLI::Option* horizon_opt = nullptr;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--preset", preset, "preset name (theorem1..theorem7, no-attack)");
        cmd->add_option("--config", config_path, "scenario config file (JSON)");
        cmd->add_option("--seeds", seeds_text, "comma list or a..b range");
        cmd->add_option("--out", out_flag, "output directory (default $BCMAB_OUT or ./out)");
        cmd->add_option("--jobs", jobs, "replica parallelism degree");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "run one scenario across seeds");
    add_common(run_cmd);
    horizon_opt = run_cmd->add_option("--horizon", horizon, "horizon T (default 2000 for presets)");
    run_cmd->add_flag("--export-chain", with_chain, "write the canonical chain per seed");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "horizon grid with regret scaling report");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--horizons", horizons_text, "comma list of horizons")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        std::vector<uint64_t> seeds = parse_seeds(seeds_text);
        if (seeds.empty()) throw ConfigError("no seeds given");
        fs::path out = output_dir(out_flag);
        fs::create_directories(out);

        if (run_cmd->parsed()) {
            // an unset --horizon keeps a config file's own horizon
            int64_t run_horizon = horizon_opt->count() > 0 || !preset.empty() ? horizon : -1;
            std::vector<ReplicaSpec> specs;
            std::vector<std::string> audit;
            for (uint64_t seed : seeds)
                specs.push_back({base_scenario(preset, config_path, run_horizon, seed,
                                               specs.empty() ? &audit : nullptr)});
            for (const auto& line : audit) std::cout << "default applied: " << line << '\n';

            std::vector<ReplicaResult> results(specs.size());
            if (jobs > 1 && !with_chain) {
                results = run_replicas_parallel(specs, /*keep_steps=*/true, jobs);
            } else {
                for (size_t i = 0; i < specs.size(); ++i)
                    results[i] = run_replica(specs[i], /*keep_steps=*/true, with_chain);
            }

            std::ostringstream merged;
            merged << "[\n";
            for (size_t i = 0; i < results.size(); ++i) {
                const auto& r = results[i];
                std::string stem = "seed" + std::to_string(r.seed);
                write_file(out / (stem + ".csv"), r.csv);
                write_file(out / (stem + ".json"), r.summary_json);
                if (with_chain) write_file(out / (stem + ".chain"), r.chain_text);
                merged << r.summary_json << (i + 1 < results.size() ? ",\n" : "\n");
                std::cout << stem << ": R_T=" << r.summary.realized_regret
                          << " cost=" << r.summary.total_cost
                          << " approval=" << r.summary.approval_rate << '\n';
            }
            merged << "]\n";
            write_file(out / "merged.json", merged.str());
            return 0;
        }

        // sweep: one trajectory per seed at the largest horizon, with the
        // smaller grid rows read off as prefix checkpoints so every row runs
        // the identical scenario (same burn-in schedule).
        std::vector<int64_t> horizons;
        for (uint64_t h : parse_seeds(horizons_text)) horizons.push_back(static_cast<int64_t>(h));
        std::sort(horizons.begin(), horizons.end());
        if (horizons.size() < 3) throw ConfigError("sweep needs at least 3 horizons");
        if (seeds.size() < 5) throw ConfigError("sweep needs at least 5 seeds");

        std::vector<ReplicaSpec> specs;
        for (uint64_t seed : seeds)
            specs.push_back(
                {base_scenario(preset, config_path, horizons.back(), seed, nullptr), horizons});
        std::vector<ReplicaResult> results =
            jobs > 1 ? run_replicas_parallel(specs, /*keep_steps=*/false, jobs)
                     : run_replicas_serial(specs, /*keep_steps=*/false);

        SweepReport report = build_sweep_report(results);
        write_file(out / "sweep.json", sweep_report_json(report));
        write_file(out / "sweep.txt", sweep_report_text(report));
        std::cout << sweep_report_text(report);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const SimInvariantError& e) {
        std::cerr << "invariant breach: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
