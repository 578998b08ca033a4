#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "osa/baselines.hpp"
#include "osa/channel_model.hpp"
#include "osa/engine.hpp"

using namespace osa;

namespace {

PolicyFactory make_mc(int n, long learn_len, std::optional<long> epoch_len) {
    return [=](std::uint64_t sd) {
        return std::unique_ptr<Policy>(new McPolicy(n, learn_len, epoch_len, sd));
    };
}

}  // namespace

TEST_CASE("random policy stays in range and varies") {
    RandomPolicy p(8, 42);
    std::set<int> seen;
    for (int i = 0; i < 200; ++i) {
        auto a = p.select();
        CHECK(a.channel >= 0);
        CHECK(a.channel < 8);
        CHECK(a.sensing == Sensing::Short);
        seen.insert(a.channel);
        SlotFeedback fb;
        fb.channel = a.channel;
        p.observe(fb);
    }
    CHECK(seen.size() == 8);
}

TEST_CASE("seqhop settles on the first clean transmission, then round-robins") {
    SeqHopPolicy p(8, 7);
    CHECK_FALSE(p.settled());
    // A collision keeps it hopping randomly.
    auto a = p.select();
    SlotFeedback fb;
    fb.channel = a.channel;
    fb.transmitted = true;
    fb.collided = true;
    p.observe(fb);
    CHECK_FALSE(p.settled());
    CHECK(p.random_hop_exit_slot() == 0);

    a = p.select();
    fb = {};
    fb.channel = a.channel;
    fb.transmitted = true;
    fb.reward = 1;
    p.observe(fb);
    CHECK(p.settled());
    CHECK(p.random_hop_exit_slot() == 2);

    int prev = a.channel;
    for (int i = 0; i < 20; ++i) {
        auto b = p.select();
        CHECK(b.channel == (prev + 1) % 8);
        CHECK(b.incumbent);
        prev = b.channel;
        fb = {};
        fb.channel = b.channel;
        p.observe(fb);
    }
}

TEST_CASE("mc_estimate_users inverts the collision-free fraction") {
    CHECK(mc_estimate_users(1.0, 8) == 1);
    CHECK(mc_estimate_users(std::pow(7.0 / 8.0, 3), 8) == 4);
    CHECK(mc_estimate_users(std::pow(7.0 / 8.0, 7), 8) == 8);
    CHECK(mc_estimate_users(0.0, 8) == 8);
    CHECK(mc_estimate_users(-0.1, 8) == 8);
}

TEST_CASE("mc learns, estimates the user count, and seats everyone") {
    std::vector<double> mu = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
    ChannelModel model(mu, 0.1, 11);
    Schedule s;
    s.horizon = 5000;
    struct Spy : McPolicy {
        using McPolicy::McPolicy;
        int* users;
        Phase* end_phase;
        ~Spy() override {
            *users = estimated_users();
            *end_phase = phase();
        }
    };
    int users[4] = {0, 0, 0, 0};
    McPolicy::Phase phases[4];
    for (int u = 1; u <= 4; ++u) {
        ScheduleEntry e;
        e.su_id = u;
        e.policy_kind = "mc";
        e.make = [&, u](std::uint64_t sd) {
            auto p = std::make_unique<Spy>(8, 2000, std::nullopt, sd);
            p->users = &users[u - 1];
            p->end_phase = &phases[u - 1];
            return std::unique_ptr<Policy>(std::move(p));
        };
        s.entries.push_back(std::move(e));
    }
    auto trace = run(s, model, 11);
    std::set<int> finals;
    for (const auto& log : trace.su_logs) finals.insert(log.final_channel);
    CHECK(finals.size() == 4);
    for (int u = 0; u < 4; ++u) {
        CHECK(users[u] == 4);
        CHECK(phases[u] == McPolicy::Phase::Seated);
    }
    // No collisions after learning plus a generous seating margin.
    long late_collisions = 0;
    for (const auto& rec : trace.records)
        if (rec.slot > 2500 && rec.collided) ++late_collisions;
    CHECK(late_collisions == 0);
}

TEST_CASE("mc phase transitions happen at learn_len") {
    McPolicy p(4, 10, std::nullopt, 3);
    CHECK(p.phase() == McPolicy::Phase::Learn);
    for (int i = 0; i < 10; ++i) {
        auto a = p.select();
        CHECK(p.phase() == McPolicy::Phase::Learn);
        SlotFeedback fb;
        fb.channel = a.channel;
        fb.transmitted = true;
        fb.reward = 1;
        p.observe(fb);
    }
    CHECK(p.phase() == McPolicy::Phase::Chairs);
    auto a = p.select();
    SlotFeedback fb;
    fb.channel = a.channel;
    fb.transmitted = true;
    fb.reward = 1;
    p.observe(fb);
    CHECK(p.phase() == McPolicy::Phase::Seated);
}

TEST_CASE("dmc restarts learning every epoch") {
    McPolicy p(4, 10, 25, 3);
    CHECK(p.kind() == "dmc");
    int learn_slots = 0;
    for (int i = 0; i < 60; ++i) {
        // The epoch restart happens inside select(), so sample the phase after.
        auto a = p.select();
        if (p.phase() == McPolicy::Phase::Learn) ++learn_slots;
        SlotFeedback fb;
        fb.channel = a.channel;
        fb.transmitted = true;
        fb.reward = 1;
        p.observe(fb);
    }
    // 60 slots cover epochs starting at 1, 26 and 51: 10 + 10 + 10 learn slots.
    CHECK(learn_slots == 30);
    CHECK(McPolicy(4, 10, std::nullopt, 3).kind() == "mc");
}
