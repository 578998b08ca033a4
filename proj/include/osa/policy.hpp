#ifndef OSA_POLICY_HPP
#define OSA_POLICY_HPP

#include <string>
#include <vector>

namespace osa {

enum class Sensing { Short, Long };

// One SU's per-slot decision. Channels are 0-based throughout the library;
// external formats (CSV, fixtures, CLI) use 1-based indices.
// incumbent == true marks a settled/locked/TL/sequential-hopping SU that
// transmits unconditionally on vacancy; it implies short sensing.
struct ChannelAction {
    int channel = 0;
    Sensing sensing = Sensing::Short;
    bool incumbent = false;
    // Pure probe: sense the channel the whole slot, never transmit. Used
    // while checking whether a better channel is silent, so two SUs probing
    // the same channel do not mistake each other for its occupant.
    bool listen_only = false;
};

// Engine response for one slot.
//   pu_busy     - PU occupied the chosen channel (nobody transmits)
//   su_present  - at least one OTHER SU transmitted on the channel;
//                 meaningful under long sensing
//   transmitted - this SU transmitted
//   collided    - this SU transmitted together with another SU
//   reward      - 1 iff transmitted without collision
struct SlotFeedback {
    int channel = 0;
    bool pu_busy = false;
    bool su_present = false;
    bool transmitted = false;
    bool collided = false;
    int reward = 0;
};

// Selection / observed-vacant counters per channel.
struct ChannelStats {
    std::vector<long> s;
    std::vector<long> v;

    explicit ChannelStats(int n = 0)
        : s(static_cast<std::size_t>(n), 0), v(static_cast<std::size_t>(n), 0) {}

    void record(int channel, bool vacant) {
        ++s[static_cast<std::size_t>(channel)];
        if (vacant) ++v[static_cast<std::size_t>(channel)];
    }
};

// Channel indices sorted best-first by estimated vacancy probability;
// ties broken by lower channel index.
struct Ranking {
    std::vector<int> pi;
};

// Throws if any channel is unobserved.
Ranking rank_channels(const ChannelStats& stats);

// Ranking from explicit estimates (no observation-count precondition).
Ranking rank_by_estimate(const std::vector<double>& mu_hat);

// State-machine milestones, recorded at policy-local slot numbers so that
// figure replays can assert exact offsets.
struct PolicyEvent {
    long slot = 0;          // slots since the policy's phase clock started
    std::string type;       // "occupied" | "locked" | "confirmed" | "settled"
    int rank = 0;           // 0-based rank the event refers to
};

// Observe/act contract between an SU policy and the engine. One select()
// per slot, followed by exactly one observe() with the matching feedback.
class Policy {
  public:
    virtual ~Policy() = default;
    virtual ChannelAction select() = 0;
    virtual void observe(const SlotFeedback& feedback) = 0;
    virtual std::string kind() const = 0;

    // Policy-local slot of the first collision-free own transmission during
    // random hopping; 0 for policies without that phase (or before it ends).
    virtual long random_hop_exit_slot() const { return 0; }

    const std::vector<PolicyEvent>& events() const { return events_; }

  protected:
    void emit(long slot, std::string type, int rank) {
        events_.push_back({slot, std::move(type), rank});
    }

  private:
    std::vector<PolicyEvent> events_;
};

}  // namespace osa

#endif
