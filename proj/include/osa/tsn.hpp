#ifndef OSA_TSN_HPP
#define OSA_TSN_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "osa/policy.hpp"

namespace osa {

// Trekking policy for static networks: channel characterization (random
// hopping, then sequential hopping) followed by a trekking phase that walks
// toward better-ranked channels under probe budgets and locks permanently.
class TsnPolicy : public Policy {
  public:
    enum class Phase { RandomHop, SeqHop, Trek, Locked };

    struct Config {
        int n = 0;
        double theta = 0.1;
        double delta = 0.3;
        double epsilon = 0.07;
        // Theory mode derives t_rh/t_sh from delta/3 splits; overrides pin
        // the experimental split (e.g. T_CC = 2000 as 110 + 1890).
        std::optional<long> t_rh_override;
        std::optional<long> t_sh_override;
        std::optional<double> delta_prime_override;

        long t_rh() const;
        long t_sh() const;
        long t_cc() const { return t_rh() + t_sh(); }
        double delta_prime() const;
    };

    TsnPolicy(const Config& config, std::uint64_t seed);

    // Replay constructor: policy begins directly in the trekking phase with
    // a pinned ranking (identity) and pinned per-rank budgets; policy-local
    // slot 1 is the first trekking slot.
    TsnPolicy(int n, int start_rank, std::vector<long> pinned_m_budget);

    ChannelAction select() override;
    void observe(const SlotFeedback& feedback) override;
    std::string kind() const override { return "tsn"; }

    Phase phase() const { return phase_; }
    int current_channel() const { return channel_; }
    long random_hop_exit_slot() const override { return rh_exit_slot_; }
    const std::vector<int>& ranking() const { return pi_; }

  private:
    void finish_cc();
    void enter_trek(int own_rank);

    int n_;
    double theta_;
    long t_cc_;
    double delta_prime_;
    Phase phase_ = Phase::RandomHop;
    long slot_ = 0;       // slots since activation
    long rh_exit_slot_ = 0;
    int channel_ = 0;
    ChannelStats stats_;
    std::vector<int> pi_;       // rank -> channel
    std::vector<long> m_;       // budget while rank r is reserved
    int reserved_ = 0;          // reserved rank while trekking
    int probe_ = 0;             // probed rank (= reserved - 1)
    long y_ = 0;                // probe counter for current reservation
    long hold_ = 0;             // backoff slots left on the reserved channel
    std::mt19937_64 rng_;
};

}  // namespace osa

#endif
