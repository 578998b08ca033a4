#pragma once

#include <vector>

#include "osa/engine.hpp"

namespace osa {

struct MetricSeries {
    std::vector<double> regret;       // cumulative, indexed by slot-1
    std::vector<long> collisions;     // cumulative collision count
    std::vector<double> utilization;  // percent of ideal vacancies used
};

// Expected-reward regret against a genie that assigns the U_t active users
// to the U_t best channels: per-slot increment is the sum of the top-U_t
// means minus the mean of each user's channel when it transmitted without
// collision.
MetricSeries compute_metrics(const Trace& trace, const std::vector<double>& mu);

// Jain's fairness index over per-user totals (cross-run means).
double jain_index(const std::vector<double>& per_user);

}  // namespace osa
