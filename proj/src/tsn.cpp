#include "osa/tsn.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

#include "osa/durations.hpp"

namespace osa {

long TsnPolicy::Config::t_rh() const {
    if (t_rh_override) return *t_rh_override;
    return durations::t_rh(n, theta, delta / 3.0);
}

long TsnPolicy::Config::t_sh() const {
    if (t_sh_override) return *t_sh_override;
    return durations::t_sh(n, epsilon, delta / 3.0);
}

double TsnPolicy::Config::delta_prime() const {
    if (delta_prime_override) return *delta_prime_override;
    return durations::default_delta_prime(n, delta / 3.0);
}

TsnPolicy::TsnPolicy(const Config& config, std::uint64_t seed)
    : n_(config.n),
      theta_(config.theta),
      t_cc_(config.t_cc()),
      delta_prime_(config.delta_prime()),
      stats_(config.n),
      rng_(seed) {
    if (n_ < 1) throw std::invalid_argument("n must be >= 1");
    if (t_cc_ < 2) throw std::invalid_argument("t_cc must be at least 2 slots");
}

TsnPolicy::TsnPolicy(int n, int start_rank, std::vector<long> pinned_m_budget)
    : n_(n),
      theta_(0.0),
      t_cc_(0),
      delta_prime_(0.0),
      stats_(n),
      m_(std::move(pinned_m_budget)),
      rng_(0) {
    if (start_rank < 0 || start_rank >= n)
        throw std::invalid_argument("start_rank out of range");
    if (static_cast<int>(m_.size()) != n)
        throw std::invalid_argument("pinned budget table must have n entries");
    pi_.resize(static_cast<std::size_t>(n));
    std::iota(pi_.begin(), pi_.end(), 0);
    enter_trek(start_rank);
}

void TsnPolicy::enter_trek(int own_rank) {
    if (own_rank == 0) {
        // Already on the best channel: no better one to probe.
        phase_ = Phase::Locked;
        channel_ = pi_[0];
        emit(slot_ - t_cc_, "locked", 0);
        return;
    }
    phase_ = Phase::Trek;
    reserved_ = own_rank;
    probe_ = own_rank - 1;
    y_ = 0;
}

void TsnPolicy::finish_cc() {
    std::vector<double> mu_hat(static_cast<std::size_t>(n_));
    for (int c = 0; c < n_; ++c) {
        auto idx = static_cast<std::size_t>(c);
        double est = stats_.s[idx] > 0
                         ? static_cast<double>(stats_.v[idx]) /
                               static_cast<double>(stats_.s[idx])
                         : 0.0;
        // Probe budgets need mu_hat in (0,1]; the model guarantees mu > theta.
        mu_hat[idx] = est;
    }
    pi_ = rank_by_estimate(mu_hat).pi;

    std::vector<double> ranked(static_cast<std::size_t>(n_));
    for (int r = 0; r < n_; ++r) {
        double est = mu_hat[static_cast<std::size_t>(pi_[r])];
        ranked[static_cast<std::size_t>(r)] =
            std::clamp(est, theta_ > 0.0 ? theta_ : 1e-3, 1.0);
    }
    m_ = durations::m_table(ranked, delta_prime_).m_budget;

    int own_rank = static_cast<int>(
        std::find(pi_.begin(), pi_.end(), channel_) - pi_.begin());
    enter_trek(own_rank);
}

ChannelAction TsnPolicy::select() {
    ++slot_;
    switch (phase_) {
        case Phase::RandomHop: {
            std::uniform_int_distribution<int> dist(0, n_ - 1);
            channel_ = dist(rng_);
            return {channel_, Sensing::Short, false};
        }
        case Phase::SeqHop:
            channel_ = (channel_ + 1) % n_;
            return {channel_, Sensing::Short, true};
        case Phase::Trek:
            if (hold_ > 0) {
                channel_ = pi_[reserved_];
                return {channel_, Sensing::Short, true};
            }
            channel_ = pi_[probe_];
            return {channel_, Sensing::Long, false};
        case Phase::Locked:
            return {channel_, Sensing::Short, true};
    }
    return {};
}

void TsnPolicy::observe(const SlotFeedback& feedback) {
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
        case Phase::Trek: {
            if (hold_ > 0) {
                --hold_;
                break;
            }
            ++y_;
            if (feedback.transmitted && feedback.collided) {
                // Another prober is walking the same channel: probers only
                // transmit into silence, so a settled SU cannot be involved.
                // Back off to the reserved channel half the time so the two
                // probe windows separate instead of both giving up.
                if (std::bernoulli_distribution(0.5)(rng_)) {
                    long span = std::max<long>(
                        m_[static_cast<std::size_t>(reserved_)], 2);
                    hold_ = std::uniform_int_distribution<long>(1, span)(rng_);
                    y_ = 0;
                    break;
                }
            }
            if (!feedback.pu_busy && feedback.su_present &&
                !feedback.transmitted) {
                // A settled SU transmitted here: fall back to the reservation.
                channel_ = pi_[reserved_];
                phase_ = Phase::Locked;
                emit(slot_ - t_cc_, "locked", reserved_);
            } else if (y_ >= m_[static_cast<std::size_t>(reserved_)]) {
                // Budget exhausted without seeing an SU: occupy the probed rank.
                reserved_ = probe_;
                emit(slot_ - t_cc_, "occupied", reserved_);
                if (reserved_ == 0) {
                    phase_ = Phase::Locked;
                    channel_ = pi_[0];
                    emit(slot_ - t_cc_, "locked", 0);
                } else {
                    probe_ = reserved_ - 1;
                    y_ = 0;
                }
            }
            break;
        }
        case Phase::Locked:
            break;
    }

    if (slot_ == t_cc_ &&
        (phase_ == Phase::RandomHop || phase_ == Phase::SeqHop)) {
        finish_cc();
    }
}

}  // namespace osa
