#include "osa/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace osa {

MetricSeries compute_metrics(const Trace& trace, const std::vector<double>& mu) {
    if (static_cast<int>(mu.size()) != trace.num_channels)
        throw std::invalid_argument("mu size does not match trace channel count");

    std::vector<int> order(mu.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&mu](int a, int b) { return mu[a] > mu[b]; });

    const std::size_t horizon = static_cast<std::size_t>(trace.horizon);
    MetricSeries out;
    out.regret.resize(horizon, 0.0);
    out.collisions.resize(horizon, 0);
    out.utilization.resize(horizon, 0.0);

    std::vector<int> active_count(horizon, 0);
    std::vector<double> gained(horizon, 0.0);
    std::vector<long> rewards(horizon, 0);
    std::vector<long> collided(horizon, 0);
    for (const auto& rec : trace.records) {
        std::size_t i = static_cast<std::size_t>(rec.slot - 1);
        ++active_count[i];
        // Expected-reward credit (Eq. form): an SU that holds its channel
        // earns mu analytically; PU-busy slots still count since the genie's
        // optimum is also an expectation. Collisions and probe deferrals
        // earn nothing.
        if (!rec.collided && (rec.transmitted || rec.pu_busy))
            gained[i] += mu[rec.channel];
        rewards[i] += rec.reward;
        if (rec.collided) ++collided[i];
    }

    double cum_regret = 0.0;
    long cum_collisions = 0;
    long cum_rewards = 0;
    long cum_ideal = 0;
    for (std::size_t i = 0; i < horizon; ++i) {
        int u = std::min<int>(active_count[i], trace.num_channels);
        double best = 0.0;
        long ideal = 0;
        for (int r = 0; r < u; ++r) {
            best += mu[order[r]];
            if (i < trace.vacancies.size() && trace.vacancies[i][order[r]]) ++ideal;
        }
        // Clamp per-slot increments: transient double-credit (a prober and an
        // incumbent sharing a PU-busy channel) must not make regret regress.
        cum_regret += std::max(0.0, best - gained[i]);
        cum_collisions += collided[i];
        cum_rewards += rewards[i];
        cum_ideal += ideal;
        out.regret[i] = cum_regret;
        out.collisions[i] = cum_collisions;
        out.utilization[i] =
            cum_ideal > 0 ? 100.0 * static_cast<double>(cum_rewards) / static_cast<double>(cum_ideal)
                          : 0.0;
    }
    return out;
}

double jain_index(const std::vector<double>& per_user) {
    if (per_user.empty()) return 0.0;
    double sum = 0.0, sq = 0.0;
    for (double x : per_user) {
        sum += x;
        sq += x * x;
    }
    if (sq == 0.0) return 1.0;
    return (sum * sum) / (static_cast<double>(per_user.size()) * sq);
}

}  // namespace osa
