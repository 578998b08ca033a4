#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "osa/config.hpp"

using namespace osa;

namespace {

bool mentions(const ConfigError& e, const std::string& needle) {
    return std::any_of(e.violations.begin(), e.violations.end(),
                       [&](const std::string& v) {
                           return v.find(needle) != std::string::npos;
                       });
}

const char* kValid = R"({
  "model": {"mu": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8], "theta": 0.1},
  "horizon": 10000,
  "repetitions": 5,
  "seed": 42,
  "stride": 50,
  "output": "results",
  "policies": [
    {"kind": "tsn", "name": "trek", "delta": 0.1, "epsilon": 0.1,
     "t_rh": 110, "t_sh": 1890},
    {"kind": "dmc", "learn_len": 2000, "epoch_len": 2600}
  ],
  "schedule": {"static_u": 4}
})";

}  // namespace

TEST_CASE("a valid config parses with all fields populated") {
    auto cfg = parse_config(kValid);
    CHECK(cfg.mu.size() == 8);
    CHECK(cfg.theta == 0.1);
    CHECK(cfg.horizon == 10000);
    CHECK(cfg.repetitions == 5);
    CHECK(cfg.seed == 42);
    CHECK(cfg.stride == 50);
    CHECK(cfg.output == "results");
    REQUIRE(cfg.policies.size() == 2);
    CHECK(cfg.policies[0].kind == "tsn");
    CHECK(cfg.policies[0].name == "trek");
    CHECK(cfg.policies[0].t_rh == 110);
    CHECK(cfg.policies[0].t_sh == 1890);
    CHECK(cfg.policies[1].kind == "dmc");
    CHECK(cfg.policies[1].epoch_len == 2600);
    REQUIRE(cfg.arrivals.size() == 4);
    CHECK(cfg.arrivals[0].arrival == 1);
    CHECK(!cfg.arrivals[0].departure);
}

TEST_CASE("explicit schedule entries carry arrivals and departures") {
    auto cfg = parse_config(R"({
      "model": {"mu": [0.4, 0.9]},
      "horizon": 100,
      "policies": [{"kind": "random"}],
      "schedule": {"entries": [{"arrival": 1}, {"arrival": 10, "departure": 50}]}
    })");
    REQUIRE(cfg.arrivals.size() == 2);
    CHECK(cfg.arrivals[1].arrival == 10);
    CHECK(cfg.arrivals[1].departure == 50);
}

TEST_CASE("non-JSON input reports a parse failure") {
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
}

TEST_CASE("more active SUs than channels is rejected") {
    try {
        parse_config(R"({
          "model": {"mu": [0.4, 0.9]},
          "horizon": 100,
          "policies": [{"kind": "random"}],
          "schedule": {"static_u": 3}
        })");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(mentions(e, "active count exceeds N"));
    }
}

TEST_CASE("dmc requires an epoch length exceeding learn_len") {
    try {
        parse_config(R"({
          "model": {"mu": [0.4, 0.9]},
          "horizon": 100,
          "policies": [{"kind": "dmc", "learn_len": 50, "epoch_len": 50}],
          "schedule": {"static_u": 1}
        })");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(mentions(e, "epoch_len must exceed learn_len"));
    }

    try {
        parse_config(R"({
          "model": {"mu": [0.4, 0.9]},
          "horizon": 100,
          "policies": [{"kind": "dmc"}],
          "schedule": {"static_u": 1}
        })");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(mentions(e, "requires epoch_len"));
    }
}

TEST_CASE("every violation is reported, not just the first") {
    try {
        parse_config(R"({
          "model": {"mu": [0.4, 0.4, 1.2], "theta": 0.0},
          "horizon": 0,
          "repetitions": 0,
          "stride": 0,
          "policies": [{"kind": "warp"}],
          "schedule": {}
        })");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.violations.size() >= 7);
        CHECK(mentions(e, "mu entries must be distinct"));
        CHECK(mentions(e, "mu entries must lie in (0, 1]"));
        CHECK(mentions(e, "theta must be positive"));
        CHECK(mentions(e, "horizon must be >= 1"));
        CHECK(mentions(e, "repetitions must be >= 1"));
        CHECK(mentions(e, "stride must be >= 1"));
        CHECK(mentions(e, "unknown policy kind"));
        CHECK(mentions(e, "static_u or entries"));
    }
}

TEST_CASE("theta above some mu is rejected but equality is allowed") {
    CHECK_NOTHROW(parse_config(R"({
      "model": {"mu": [0.1, 0.9], "theta": 0.1},
      "horizon": 10,
      "policies": [{"kind": "random"}],
      "schedule": {"static_u": 1}
    })"));
    try {
        parse_config(R"({
          "model": {"mu": [0.1, 0.9], "theta": 0.2},
          "horizon": 10,
          "policies": [{"kind": "random"}],
          "schedule": {"static_u": 1}
        })");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(mentions(e, "theta must not exceed any mu"));
    }
}
