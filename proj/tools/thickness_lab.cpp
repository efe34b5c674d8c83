#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "thickness/scenarios.hpp"
#include "thickness/tolerances.hpp"

namespace {

struct Flags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<long long> budget;
    std::optional<std::string> out;
};

int execute(const Flags& flags, bool check_mode) {
    nlohmann::json j;
    {
        std::ifstream in(flags.config_path);
        if (!in) {
            std::cerr << "error: cannot open config file: " << flags.config_path
                      << "\n";
            return 2;
        }
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
            return 2;
        }
    }
    if (j.is_object()) {
        if (flags.seed) j["seed"] = *flags.seed;
        if (flags.budget) j["budget"] = *flags.budget;
        if (flags.out) j["out"] = *flags.out;
    }

    thickness::ExperimentReport report;
    std::string out_stem;
    try {
        const thickness::ExperimentConfig config = thickness::parse_config(j);
        out_stem = config.out;
        report = thickness::run_scenario(config);
    } catch (const thickness::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const thickness::resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const std::string json_path = out_stem + ".json";
    const std::string csv_path = out_stem + ".csv";
    {
        std::ofstream out(json_path);
        out << report.body.dump(2) << "\n";
    }
    {
        std::ofstream out(csv_path);
        out << report.csv_header << "\n" << report.csv_row << "\n";
    }

    std::cout << report.csv_header << "\n" << report.csv_row << "\n";
    std::cout << "report: " << json_path << "\n";
    if (check_mode) {
        std::cout << (report.pass ? "CHECK PASS" : "CHECK FAIL") << "\n";
        return report.pass ? 0 : 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covering-radius experiments over finite-dimensional normed spaces"};
    app.require_subcommand(1);

    Flags run_flags, check_flags;
    const auto wire = [](CLI::App* cmd, Flags& f) {
        cmd->add_option("config", f.config_path, "scenario config (JSON)")
            ->required();
        cmd->add_option("--seed", f.seed, "override the config seed");
        cmd->add_option("--budget", f.budget, "override the evaluation budget");
        cmd->add_option("--out", f.out, "override the output stem");
    };
    CLI::App* run = app.add_subcommand("run", "run a scenario, write report files");
    wire(run, run_flags);
    CLI::App* check =
        app.add_subcommand("check", "run a scenario and enforce its thresholds");
    wire(check, check_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return execute(run_flags, false);
        return execute(check_flags, true);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
