#ifndef OSA_TDN_HPP
#define OSA_TDN_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "osa/policy.hpp"

namespace osa {

// Trekking policy for dynamic networks: a long-sensing CC phase (entrants
// defer to SUs already transmitting), then continuous trekking that
// alternates temporary-lock dwells with best-channel-identification probes
// so vacated top channels are eventually taken over.
class TdnPolicy : public Policy {
  public:
    enum class Phase { RandomHop, SeqHop, Ctr };

    struct Config {
        int n = 0;
        double theta = 0.1;
        double delta = 0.3;
        double epsilon = 0.07;
        long t_tl = 200;
        std::optional<long> t_rh_override;
        std::optional<long> t_sh_override;
        std::optional<double> delta_prime_override;

        long t_rh() const;
        long t_sh() const;
        long t_cc() const { return t_rh() + t_sh(); }
        double delta_prime() const;
    };

    TdnPolicy(const Config& config, std::uint64_t seed);

    // Replay constructor: policy begins directly in the CTR phase on
    // start_rank with a pinned identity ranking and pinned budget table
    // (m_budget[r] = probe window when rank r is the fall-back).
    TdnPolicy(int n, int start_rank, std::vector<long> pinned_m_budget,
              long t_tl);

    ChannelAction select() override;
    void observe(const SlotFeedback& feedback) override;
    std::string kind() const override { return "tdn"; }

    Phase phase() const { return phase_; }
    bool in_tl() const { return tl_; }
    int current_rank() const { return cur_; }
    long random_hop_exit_slot() const override { return rh_exit_slot_; }

  private:
    void finish_cc();
    long budget_for(int rank) const;

    int n_;
    double theta_;
    long t_cc_;
    long t_tl_;
    double delta_prime_;
    Phase phase_ = Phase::RandomHop;
    long slot_ = 0;
    long rh_exit_slot_ = 0;
    int channel_ = 0;
    ChannelStats stats_;
    std::vector<int> pi_;
    std::vector<long> m_;
    int cur_ = 0;       // current rank in CTR (fall-back is cur_ + 1)
    long y_ = 0;        // probe counter
    long x_ = 0;        // TL dwell counter
    bool tl_ = false;
    bool fb_ = false;   // set once the first rank is confirmed free
    std::mt19937_64 rng_;
};

}  // namespace osa

#endif
