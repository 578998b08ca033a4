#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace osa {

struct PolicySpec {
    std::string name;  // label used in output files
    std::string kind;  // tsn | tdn | random | seqhop | mc | dmc
    double delta = 0.1;
    double epsilon = 0.1;
    std::optional<long> t_cc;  // total learning length; split into RH + SH
    std::optional<long> t_rh;
    std::optional<long> t_sh;
    std::optional<double> delta_prime;
    long t_tl = 200;
    long learn_len = 2000;
    std::optional<long> epoch_len;  // dmc only
};

struct ArrivalSpec {
    long arrival = 1;
    std::optional<long> departure;  // absent = stays until horizon
};

struct ExperimentConfig {
    std::vector<double> mu;
    double theta = 0.1;
    long horizon = 0;
    int repetitions = 1;
    std::uint64_t seed = 1;
    long stride = 100;
    std::string output = "out";
    std::vector<PolicySpec> policies;
    std::vector<ArrivalSpec> arrivals;  // one entry per SU
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::vector<std::string>& violations);
    std::vector<std::string> violations;
};

// Parses and validates a JSON experiment config. Throws ConfigError listing
// every violation found, not just the first.
ExperimentConfig parse_config(const std::string& text);

}  // namespace osa
