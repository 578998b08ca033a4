#include "osa/tdn.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

#include "osa/durations.hpp"

namespace osa {

long TdnPolicy::Config::t_rh() const {
    if (t_rh_override) return *t_rh_override;
    return durations::t_rh(n, theta, delta / 3.0);
}

long TdnPolicy::Config::t_sh() const {
    if (t_sh_override) return *t_sh_override;
    return durations::t_sh(n, epsilon, delta / 3.0);
}

double TdnPolicy::Config::delta_prime() const {
    if (delta_prime_override) return *delta_prime_override;
    return durations::default_delta_prime(n, delta / 3.0);
}

TdnPolicy::TdnPolicy(const Config& config, std::uint64_t seed)
    : n_(config.n),
      theta_(config.theta),
      t_cc_(config.t_cc()),
      t_tl_(config.t_tl),
      delta_prime_(config.delta_prime()),
      stats_(config.n),
      rng_(seed) {
    if (n_ < 1) throw std::invalid_argument("n must be >= 1");
    if (t_cc_ < 2) throw std::invalid_argument("t_cc must be at least 2 slots");
    if (t_tl_ < 1) throw std::invalid_argument("t_tl must be >= 1");
}

TdnPolicy::TdnPolicy(int n, int start_rank, std::vector<long> pinned_m_budget,
                     long t_tl)
    : n_(n),
      theta_(0.0),
      t_cc_(0),
      t_tl_(t_tl),
      delta_prime_(0.0),
      phase_(Phase::Ctr),
      stats_(n),
      m_(std::move(pinned_m_budget)),
      cur_(start_rank),
      rng_(0) {
    if (start_rank < 0 || start_rank >= n)
        throw std::invalid_argument("start_rank out of range");
    if (static_cast<int>(m_.size()) != n)
        throw std::invalid_argument("pinned budget table must have n entries");
    if (t_tl_ < 1) throw std::invalid_argument("t_tl must be >= 1");
    pi_.resize(static_cast<std::size_t>(n));
    std::iota(pi_.begin(), pi_.end(), 0);
}

long TdnPolicy::budget_for(int rank) const {
    // Probe window for the channel at `rank`; the fall-back is one rank
    // worse, clamped at the bottom of the list.
    int j = std::min(rank + 1, n_ - 1);
    return m_[static_cast<std::size_t>(j)];
}

void TdnPolicy::finish_cc() {
    std::vector<double> mu_hat(static_cast<std::size_t>(n_));
    for (int c = 0; c < n_; ++c) {
        auto idx = static_cast<std::size_t>(c);
        mu_hat[idx] = stats_.s[idx] > 0
                          ? static_cast<double>(stats_.v[idx]) /
                                static_cast<double>(stats_.s[idx])
                          : 0.0;
    }
    pi_ = rank_by_estimate(mu_hat).pi;

    std::vector<double> ranked(static_cast<std::size_t>(n_));
    for (int r = 0; r < n_; ++r) {
        double est = mu_hat[static_cast<std::size_t>(pi_[r])];
        ranked[static_cast<std::size_t>(r)] =
            std::clamp(est, theta_ > 0.0 ? theta_ : 1e-3, 1.0);
    }
    m_ = durations::m_table(ranked, delta_prime_).m_budget;

    phase_ = Phase::Ctr;
    cur_ = static_cast<int>(std::find(pi_.begin(), pi_.end(), channel_) -
                            pi_.begin());
    y_ = 0;
    x_ = 0;
    tl_ = false;
    fb_ = false;
}

ChannelAction TdnPolicy::select() {
    ++slot_;
    switch (phase_) {
        case Phase::RandomHop: {
            std::uniform_int_distribution<int> dist(0, n_ - 1);
            channel_ = dist(rng_);
            // Long sensing: defer to SUs already settled in the network.
            return {channel_, Sensing::Long, false};
        }
        case Phase::SeqHop:
            channel_ = (channel_ + 1) % n_;
            return {channel_, Sensing::Long, false};
        case Phase::Ctr:
            channel_ = pi_[cur_];
            if (tl_) return {channel_, Sensing::Short, true};
            return {channel_, Sensing::Long, false};
    }
    return {};
}

void TdnPolicy::observe(const SlotFeedback& feedback) {
    assert(feedback.channel == channel_);
    stats_.record(channel_, !feedback.pu_busy);

    switch (phase_) {
        case Phase::RandomHop:
            if (feedback.transmitted && !feedback.collided) {
                phase_ = Phase::SeqHop;
                rh_exit_slot_ = slot_;
            }
            break;
        case Phase::SeqHop:
            break;
        case Phase::Ctr: {
            if (tl_) {
                ++x_;
                if (x_ >= t_tl_) {
                    if (cur_ == 0) {
                        // No better channel exists: keep the top channel busy.
                        x_ = 0;
                    } else {
                        tl_ = false;
                        --cur_;
                        y_ = 0;
                    }
                }
                break;
            }
            ++y_;
            if (feedback.transmitted && feedback.collided) {
                // Another prober on the same channel (probers only transmit
                // into silence, so this is not a settled SU): yield half the
                // time so the contenders separate instead of looping.
                if (std::bernoulli_distribution(0.5)(rng_)) {
                    cur_ = std::min(cur_ + 1, n_ - 1);
                    if (fb_) {
                        // Wait out the contention on the reserved channel.
                        tl_ = true;
                        x_ = 0;
                    } else {
                        y_ = 0;
                    }
                    break;
                }
            }
            if (!feedback.pu_busy && feedback.su_present &&
                !feedback.transmitted) {
                if (fb_) {
                    // Fall back to the reserved rank and dwell there.
                    cur_ = std::min(cur_ + 1, n_ - 1);
                    tl_ = true;
                    x_ = 0;
                    emit(slot_ - t_cc_, "settled", cur_);
                } else {
                    // Pushed one rank worse during the initial downward trek.
                    cur_ = std::min(cur_ + 1, n_ - 1);
                    y_ = 0;
                }
            } else if (y_ >= budget_for(cur_)) {
                emit(slot_ - t_cc_, "confirmed", cur_);
                fb_ = true;
                if (cur_ == 0) {
                    tl_ = true;
                    x_ = 0;
                    emit(slot_ - t_cc_, "settled", 0);
                } else {
                    --cur_;
                    y_ = 0;
                }
            }
            break;
        }
    }

    if (slot_ == t_cc_ &&
        (phase_ == Phase::RandomHop || phase_ == Phase::SeqHop)) {
        finish_cc();
    }
}

}  // namespace osa
