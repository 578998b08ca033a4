#ifndef OSA_BASELINES_HPP
#define OSA_BASELINES_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "osa/policy.hpp"

namespace osa {

// Naive control: a uniformly random channel every slot.
class RandomPolicy : public Policy {
  public:
    RandomPolicy(int n, std::uint64_t seed);

    ChannelAction select() override;
    void observe(const SlotFeedback& feedback) override;
    std::string kind() const override { return "random"; }

  private:
    int n_;
    int channel_ = 0;
    std::mt19937_64 rng_;
};

// Random-hop until the first collision-free transmission, then perpetual
// sequential hopping over all N channels.
class SeqHopPolicy : public Policy {
  public:
    SeqHopPolicy(int n, std::uint64_t seed);

    ChannelAction select() override;
    void observe(const SlotFeedback& feedback) override;
    std::string kind() const override { return "seqhop"; }
    bool settled() const { return settled_; }
    long random_hop_exit_slot() const override { return rh_exit_slot_; }

  private:
    int n_;
    bool settled_ = false;
    long slot_ = 0;
    long rh_exit_slot_ = 0;
    int channel_ = 0;
    std::mt19937_64 rng_;
};

// Inverts P(no collision) = (1 - 1/N)^(U-1) to estimate the number of
// random-hopping SUs from the observed collision-free fraction nu_hat.
// nu_hat = 0 clamps to N.
int mc_estimate_users(double nu_hat, int n);

// Musical-chairs reconstruction: a random learning stage estimates the SU
// count and channel ranking, then SUs grab a random seat among the top
// u_hat ranks until a collision-free transmission seats them. With
// epoch_len set (DMC), the whole policy restarts every epoch.
class McPolicy : public Policy {
  public:
    enum class Phase { Learn, Chairs, Seated };

    McPolicy(int n, long learn_len, std::optional<long> epoch_len,
             std::uint64_t seed);

    ChannelAction select() override;
    void observe(const SlotFeedback& feedback) override;
    std::string kind() const override { return epoch_len_ ? "dmc" : "mc"; }

    Phase phase() const { return phase_; }
    int estimated_users() const { return u_hat_; }

  private:
    void restart();

    int n_;
    long learn_len_;
    std::optional<long> epoch_len_;
    Phase phase_ = Phase::Learn;
    long slot_ = 0;        // slots since activation
    long epoch_slot_ = 0;  // slots since the current epoch started
    int channel_ = 0;
    int seat_rank_ = 0;
    int u_hat_ = 1;
    long transmit_count_ = 0;
    long collision_free_count_ = 0;
    ChannelStats stats_;
    std::vector<int> pi_;
    std::mt19937_64 rng_;
};

}  // namespace osa

#endif
