#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "osa/config.hpp"
#include "osa/engine.hpp"

namespace osa {

// Resolved learning-phase split for one policy spec against the model.
struct ResolvedDurations {
    long t_rh = 0;
    long t_sh = 0;
};

ResolvedDurations resolve_cc_split(const PolicySpec& spec, const ExperimentConfig& cfg);

PolicyFactory make_policy_factory(const PolicySpec& spec, const ExperimentConfig& cfg);

Schedule make_schedule(const PolicySpec& spec, const ExperimentConfig& cfg);

// Runs every (policy, repetition) pair with seeds base..base+R-1, writing
// per-run trace CSVs and manifests plus one aggregate CSV per policy under
// cfg.output. Returns 0 on success, 2 if any run failed.
int run_experiment(const ExperimentConfig& cfg, const std::string& config_text,
                   std::ostream& log);

// Human-readable report of the duration formulas evaluated for the config.
std::string explain_durations(const ExperimentConfig& cfg);

// Executes a replay fixture (scripted vacancies, pinned rankings/budgets)
// and checks the recorded policy events against the fixture's expectations.
// Returns 0 when all expectations match, 2 otherwise.
int run_replay(const std::string& fixture_text, std::ostream& log);

}  // namespace osa
