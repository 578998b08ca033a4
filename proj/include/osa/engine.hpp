#ifndef OSA_ENGINE_HPP
#define OSA_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "osa/channel_model.hpp"
#include "osa/policy.hpp"

namespace osa {

inline constexpr long kNever = std::numeric_limits<long>::max();

// Builds a fresh policy instance for one run; receives the per-SU stream
// seed derived from the run seed.
using PolicyFactory = std::function<std::unique_ptr<Policy>(std::uint64_t seed)>;

struct ScheduleEntry {
    int su_id = 0;
    std::string policy_kind;
    PolicyFactory make;
    long arrival = 1;          // first active slot
    long departure = kNever;   // first slot the SU is gone
};

struct Schedule {
    std::vector<ScheduleEntry> entries;
    long horizon = 0;

    int active_count(long t) const;
    void validate(int n) const;  // throws if the active count ever exceeds N
};

// One (slot, SU) trace row. Channels are written 0-based here and
// converted to 1-based in the CSV serializer.
struct TraceRecord {
    long slot = 0;
    int su_id = 0;
    std::int8_t policy = 0;  // index into Trace::policy_kinds
    int channel = 0;
    Sensing sensing = Sensing::Short;
    bool pu_busy = false;
    bool su_present = false;
    bool transmitted = false;
    bool collided = false;
    std::int8_t reward = 0;
};

struct SuEventLog {
    int su_id = 0;
    long arrival = 1;
    std::string policy_kind;
    std::vector<PolicyEvent> events;  // policy-local slots
    long random_hop_exit_slot = 0;    // 0 when not applicable
    int final_channel = -1;
};

struct Trace {
    long horizon = 0;
    int num_channels = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> policy_kinds;
    std::vector<TraceRecord> records;           // grouped by slot, su order
    std::vector<std::vector<bool>> vacancies;   // [t-1][channel]
    std::vector<SuEventLog> su_logs;

    std::string to_csv() const;
};

// Collision-channel semantics for one slot. Index i of the result matches
// actions[i]. Pure function; exposed for direct testing.
std::vector<SlotFeedback> resolve_slot(const std::vector<ChannelAction>& actions,
                                       const VacancyVector& vacancies);

// Drives the slot loop for one run. Deterministic given (schedule contents,
// source realizations, seed).
Trace run(const Schedule& schedule, const VacancySource& source,
          std::uint64_t seed);

}  // namespace osa

#endif
