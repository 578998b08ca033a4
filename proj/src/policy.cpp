#include "osa/policy.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace osa {

Ranking rank_by_estimate(const std::vector<double>& mu_hat) {
    Ranking r;
    r.pi.resize(mu_hat.size());
    std::iota(r.pi.begin(), r.pi.end(), 0);
    std::stable_sort(r.pi.begin(), r.pi.end(), [&](int a, int b) {
        return mu_hat[static_cast<std::size_t>(a)] >
               mu_hat[static_cast<std::size_t>(b)];
    });
    return r;
}

Ranking rank_channels(const ChannelStats& stats) {
    std::vector<double> mu_hat(stats.s.size());
    for (std::size_t n = 0; n < stats.s.size(); ++n) {
        if (stats.s[n] == 0) throw std::invalid_argument("unobserved channel");
        mu_hat[n] = static_cast<double>(stats.v[n]) / static_cast<double>(stats.s[n]);
    }
    return rank_by_estimate(mu_hat);
}

}  // namespace osa
