#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace thickness {

class config_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// One experiment invocation. scenario and seed are mandatory; everything
// else has scenario-appropriate defaults. tolerance_scale multiplies every
// embedded pass threshold (0 forces failure, for exercising check mode).
struct ExperimentConfig {
    std::string scenario;
    std::uint64_t seed = 0;
    double p = 2.0;
    int dim = 0;  // 0 = scenario default
    int n = 8;
    int k = 2;
    int d = 0;  // 0 = scenario default
    int factors = 2;
    double eps = 0.1;
    int m = 2;
    long long budget = 200000;
    int restarts = 32;
    int trials = 1000;
    int refine = 8;
    double tolerance_scale = 1.0;
    std::string out;  // output stem; empty = scenario name
};

// Throws config_error on unknown scenario, unknown keys, missing seed, or
// ill-typed values.
ExperimentConfig parse_config(const nlohmann::json& j);

struct ExperimentReport {
    nlohmann::json body;  // config echo, per-run sections, pass, wall_time
    bool pass = false;
    std::string csv_header;
    std::string csv_row;
};

// Executes the scenario deterministically and applies its embedded
// thresholds.
ExperimentReport run_scenario(const ExperimentConfig& config);

}  // namespace thickness
