#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "osa/config.hpp"
#include "osa/experiment.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decentralized opportunistic spectrum access simulator"};
    app.require_subcommand(1);

    std::string config_path, fixture_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> reps;
    std::optional<std::string> out_dir;
    std::optional<long> stride;

    auto add_overrides = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Base seed override");
        cmd->add_option("--reps", reps, "Repetition count override");
        cmd->add_option("--out", out_dir, "Output directory override");
        cmd->add_option("--stride", stride, "Metric sampling stride override");
    };

    auto* run_cmd = app.add_subcommand("run", "Run an experiment config");
    run_cmd->add_option("config", config_path, "Experiment config JSON")->required();
    add_overrides(run_cmd);

    auto* explain_cmd = app.add_subcommand("explain", "Print derived durations for a config");
    explain_cmd->add_option("config", config_path, "Experiment config JSON")->required();

    auto* replay_cmd = app.add_subcommand("replay", "Replay a trajectory fixture");
    replay_cmd->add_option("fixture", fixture_path, "Replay fixture JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (replay_cmd->parsed()) {
            return osa::run_replay(slurp(fixture_path), std::cout);
        }
        std::string text = slurp(config_path);
        osa::ExperimentConfig cfg = osa::parse_config(text);
        if (seed) cfg.seed = *seed;
        if (reps) {
            if (*reps < 1) throw osa::ConfigError({"repetitions must be >= 1"});
            cfg.repetitions = *reps;
        }
        if (out_dir) cfg.output = *out_dir;
        if (stride) {
            if (*stride < 1) throw osa::ConfigError({"stride must be >= 1"});
            cfg.stride = *stride;
        }
        if (explain_cmd->parsed()) {
            std::cout << osa::explain_durations(cfg);
            return 0;
        }
        return osa::run_experiment(cfg, text, std::cout);
    } catch (const osa::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
