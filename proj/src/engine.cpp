#include "osa/engine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "osa/rng.hpp"

namespace osa {

int Schedule::active_count(long t) const {
    int count = 0;
    for (const auto& e : entries)
        if (e.arrival <= t && t < e.departure) ++count;
    return count;
}

void Schedule::validate(int n) const {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    for (const auto& e : entries) {
        if (e.arrival < 1) throw std::invalid_argument("arrival must be >= 1");
        if (e.departure <= e.arrival)
            throw std::invalid_argument("departure must follow arrival");
        if (!e.make) throw std::invalid_argument("schedule entry lacks a policy");
    }
    // Active count can only change at arrivals/departures; checking those
    // slots covers the whole horizon.
    for (const auto& e : entries) {
        for (long t : {e.arrival, e.departure}) {
            if (t <= horizon && active_count(t) > n)
                throw std::invalid_argument("active SU count exceeds channel count");
        }
    }
}

std::vector<SlotFeedback> resolve_slot(const std::vector<ChannelAction>& actions,
                                       const VacancyVector& vacancies) {
    const int n = static_cast<int>(vacancies.vacant.size());
    std::vector<SlotFeedback> out(actions.size());
    std::vector<int> unconditional(static_cast<std::size_t>(n), 0);
    for (const auto& a : actions) {
        if (a.channel < 0 || a.channel >= n)
            throw std::invalid_argument("action channel out of range");
        if (!a.listen_only && (a.sensing == Sensing::Short || a.incumbent))
            ++unconditional[static_cast<std::size_t>(a.channel)];
    }

    // Unconditional transmitters key the channel at sub-slot start; a
    // long-sensing prober transmits only when it hears nothing.
    std::vector<int> transmitters(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const auto& a = actions[i];
        auto ch = static_cast<std::size_t>(a.channel);
        auto& fb = out[i];
        fb.channel = a.channel;
        if (!vacancies.vacant[ch]) {
            fb.pu_busy = true;
            continue;
        }
        bool unconditional_self = a.sensing == Sensing::Short || a.incumbent;
        if (!a.listen_only && (unconditional_self || unconditional[ch] == 0)) {
            fb.transmitted = true;
            ++transmitters[ch];
        }
    }

    for (std::size_t i = 0; i < actions.size(); ++i) {
        auto& fb = out[i];
        if (fb.pu_busy) continue;
        auto ch = static_cast<std::size_t>(fb.channel);
        int others = transmitters[ch] - (fb.transmitted ? 1 : 0);
        fb.su_present = others > 0;
        fb.collided = fb.transmitted && others > 0;
        fb.reward = (fb.transmitted && !fb.collided) ? 1 : 0;
    }
    return out;
}

Trace run(const Schedule& schedule, const VacancySource& source,
          std::uint64_t seed) {
    const int n = source.num_channels();
    schedule.validate(n);

    struct Slot {
        const ScheduleEntry* entry;
        std::unique_ptr<Policy> policy;
        int last_channel = -1;
    };
    std::vector<Slot> sus;
    sus.reserve(schedule.entries.size());
    for (const auto& e : schedule.entries) sus.push_back({&e, nullptr, -1});

    Trace trace;
    trace.horizon = schedule.horizon;
    trace.num_channels = n;
    trace.seed = seed;
    trace.vacancies.reserve(static_cast<std::size_t>(schedule.horizon));

    auto policy_index = [&trace](const std::string& kind) {
        auto it = std::find(trace.policy_kinds.begin(), trace.policy_kinds.end(), kind);
        if (it == trace.policy_kinds.end()) {
            trace.policy_kinds.push_back(kind);
            return static_cast<std::int8_t>(trace.policy_kinds.size() - 1);
        }
        return static_cast<std::int8_t>(it - trace.policy_kinds.begin());
    };

    std::vector<std::size_t> active;
    std::vector<ChannelAction> actions;
    for (long t = 1; t <= schedule.horizon; ++t) {
        VacancyVector vac = source.sample_slot(t);
        trace.vacancies.push_back(vac.vacant);

        active.clear();
        for (std::size_t i = 0; i < sus.size(); ++i) {
            const auto& e = *sus[i].entry;
            if (t == e.arrival)
                sus[i].policy = e.make(substream_seed(seed, static_cast<std::uint64_t>(e.su_id)));
            if (e.arrival <= t && t < e.departure) active.push_back(i);
        }

        actions.clear();
        for (std::size_t i : active) actions.push_back(sus[i].policy->select());
        auto feedback = resolve_slot(actions, vac);
        for (std::size_t k = 0; k < active.size(); ++k) {
            auto& su = sus[active[k]];
            su.policy->observe(feedback[k]);
            TraceRecord rec;
            rec.slot = t;
            rec.su_id = su.entry->su_id;
            rec.policy = policy_index(su.entry->policy_kind);
            rec.channel = actions[k].channel;
            su.last_channel = actions[k].channel;
            rec.sensing = actions[k].sensing;
            rec.pu_busy = feedback[k].pu_busy;
            rec.su_present = feedback[k].su_present;
            rec.transmitted = feedback[k].transmitted;
            rec.collided = feedback[k].collided;
            rec.reward = static_cast<std::int8_t>(feedback[k].reward);
            trace.records.push_back(rec);
        }
    }

    for (auto& su : sus) {
        SuEventLog log;
        log.su_id = su.entry->su_id;
        log.arrival = su.entry->arrival;
        log.policy_kind = su.entry->policy_kind;
        if (su.policy) {
            log.events = su.policy->events();
            log.random_hop_exit_slot = su.policy->random_hop_exit_slot();
            log.final_channel = su.last_channel;
        }
        trace.su_logs.push_back(std::move(log));
    }
    return trace;
}

std::string Trace::to_csv() const {
    std::ostringstream out;
    out << "slot,su_id,policy,channel,sensing,pu_busy,su_present,transmitted,"
           "collided,reward\n";
    for (const auto& r : records) {
        out << r.slot << ',' << r.su_id << ','
            << policy_kinds[static_cast<std::size_t>(r.policy)] << ','
            << (r.channel + 1) << ','
            << (r.sensing == Sensing::Short ? "short" : "long") << ','
            << int(r.pu_busy) << ',' << int(r.su_present) << ','
            << int(r.transmitted) << ',' << int(r.collided) << ','
            << int(r.reward) << '\n';
    }
    return out.str();
}

}  // namespace osa
