#include "osa/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace osa {

RandomPolicy::RandomPolicy(int n, std::uint64_t seed) : n_(n), rng_(seed) {
    if (n_ < 1) throw std::invalid_argument("n must be >= 1");
}

ChannelAction RandomPolicy::select() {
    std::uniform_int_distribution<int> dist(0, n_ - 1);
    channel_ = dist(rng_);
    return {channel_, Sensing::Short, false};
}

void RandomPolicy::observe(const SlotFeedback&) {}

SeqHopPolicy::SeqHopPolicy(int n, std::uint64_t seed) : n_(n), rng_(seed) {
    if (n_ < 1) throw std::invalid_argument("n must be >= 1");
}

ChannelAction SeqHopPolicy::select() {
    ++slot_;
    if (settled_) {
        channel_ = (channel_ + 1) % n_;
        return {channel_, Sensing::Short, true};
    }
    std::uniform_int_distribution<int> dist(0, n_ - 1);
    channel_ = dist(rng_);
    return {channel_, Sensing::Short, false};
}

void SeqHopPolicy::observe(const SlotFeedback& feedback) {
    if (!settled_ && feedback.transmitted && !feedback.collided) {
        settled_ = true;
        rh_exit_slot_ = slot_;
    }
}

int mc_estimate_users(double nu_hat, int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (n == 1) return 1;
    if (nu_hat <= 0.0) return n;
    if (nu_hat >= 1.0) return 1;
    double est = 1.0 + std::log(nu_hat) / std::log(1.0 - 1.0 / n);
    int u = static_cast<int>(std::lround(est));
    return std::clamp(u, 1, n);
}

McPolicy::McPolicy(int n, long learn_len, std::optional<long> epoch_len,
                   std::uint64_t seed)
    : n_(n), learn_len_(learn_len), epoch_len_(epoch_len), stats_(n), rng_(seed) {
    if (n_ < 1) throw std::invalid_argument("n must be >= 1");
    if (learn_len_ < 1) throw std::invalid_argument("learn_len must be >= 1");
    if (epoch_len_ && *epoch_len_ <= learn_len_)
        throw std::invalid_argument("epoch_len must exceed learn_len");
}

void McPolicy::restart() {
    phase_ = Phase::Learn;
    epoch_slot_ = 0;
    transmit_count_ = 0;
    collision_free_count_ = 0;
    stats_ = ChannelStats(n_);
    pi_.clear();
}

ChannelAction McPolicy::select() {
    ++slot_;
    ++epoch_slot_;
    if (epoch_len_ && epoch_slot_ > *epoch_len_) {
        restart();
        epoch_slot_ = 1;
    }
    switch (phase_) {
        case Phase::Learn: {
            std::uniform_int_distribution<int> dist(0, n_ - 1);
            channel_ = dist(rng_);
            return {channel_, Sensing::Short, false};
        }
        case Phase::Chairs: {
            std::uniform_int_distribution<int> dist(0, u_hat_ - 1);
            seat_rank_ = dist(rng_);
            channel_ = pi_[static_cast<std::size_t>(seat_rank_)];
            return {channel_, Sensing::Short, false};
        }
        case Phase::Seated:
            return {channel_, Sensing::Short, true};
    }
    return {};
}

void McPolicy::observe(const SlotFeedback& feedback) {
    switch (phase_) {
        case Phase::Learn: {
            stats_.record(channel_, !feedback.pu_busy);
            // Collision information exists only on slots we transmitted
            // (PU-vacant); busy slots say nothing about other SUs.
            if (feedback.transmitted) {
                ++transmit_count_;
                if (!feedback.collided) ++collision_free_count_;
            }
            if (epoch_slot_ == learn_len_) {
                double nu_hat =
                    transmit_count_ > 0
                        ? static_cast<double>(collision_free_count_) /
                              static_cast<double>(transmit_count_)
                        : 1.0;
                u_hat_ = mc_estimate_users(nu_hat, n_);
                std::vector<double> mu_hat(static_cast<std::size_t>(n_));
                for (int c = 0; c < n_; ++c) {
                    auto i = static_cast<std::size_t>(c);
                    mu_hat[i] = stats_.s[i] > 0
                                    ? static_cast<double>(stats_.v[i]) /
                                          static_cast<double>(stats_.s[i])
                                    : 0.0;
                }
                pi_ = rank_by_estimate(mu_hat).pi;
                phase_ = Phase::Chairs;
            }
            break;
        }
        case Phase::Chairs:
            if (feedback.transmitted && !feedback.collided) phase_ = Phase::Seated;
            break;
        case Phase::Seated:
            break;
    }
}

}  // namespace osa
