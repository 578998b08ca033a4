#include "osa/config.hpp"

#include <json.hpp>

#include <set>
#include <sstream>

namespace osa {

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::ostringstream out;
    out << "invalid config:";
    for (const auto& p : parts) out << "\n  - " << p;
    return out.str();
}

const std::set<std::string> kKnownKinds = {"tsn", "tdn", "random", "seqhop", "mc", "dmc"};

}  // namespace

ConfigError::ConfigError(const std::vector<std::string>& v)
    : std::runtime_error(join(v)), violations(v) {}

ExperimentConfig parse_config(const std::string& text) {
    std::vector<std::string> errs;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError({std::string("not valid JSON: ") + e.what()});
    }

    ExperimentConfig cfg;

    if (!j.contains("model") || !j["model"].is_object()) {
        errs.push_back("missing \"model\" object");
    } else {
        const auto& m = j["model"];
        if (!m.contains("mu") || !m["mu"].is_array() || m["mu"].empty())
            errs.push_back("model.mu must be a non-empty array");
        else
            cfg.mu = m["mu"].get<std::vector<double>>();
        cfg.theta = m.value("theta", 0.1);
        for (double v : cfg.mu)
            if (v <= 0.0 || v > 1.0) {
                errs.push_back("model.mu entries must lie in (0, 1]");
                break;
            }
        std::set<double> distinct(cfg.mu.begin(), cfg.mu.end());
        if (!cfg.mu.empty() && distinct.size() != cfg.mu.size())
            errs.push_back("model.mu entries must be distinct");
        if (cfg.theta <= 0.0)
            errs.push_back("model.theta must be positive");
        else
            for (double v : cfg.mu)
                if (cfg.theta > v) {
                    errs.push_back("model.theta must not exceed any mu");
                    break;
                }
    }

    cfg.horizon = j.value("horizon", 0L);
    if (cfg.horizon < 1) errs.push_back("horizon must be >= 1");
    cfg.repetitions = j.value("repetitions", 1);
    if (cfg.repetitions < 1) errs.push_back("repetitions must be >= 1");
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.stride = j.value("stride", 100L);
    if (cfg.stride < 1) errs.push_back("stride must be >= 1");
    cfg.output = j.value("output", std::string("out"));

    if (!j.contains("policies") || !j["policies"].is_array() || j["policies"].empty()) {
        errs.push_back("missing non-empty \"policies\" array");
    } else {
        for (const auto& p : j["policies"]) {
            PolicySpec spec;
            spec.kind = p.value("kind", std::string());
            spec.name = p.value("name", spec.kind);
            if (!kKnownKinds.count(spec.kind)) {
                errs.push_back("unknown policy kind \"" + spec.kind + "\"");
                continue;
            }
            spec.delta = p.value("delta", 0.1);
            spec.epsilon = p.value("epsilon", 0.1);
            if (p.contains("t_cc")) {
                spec.t_cc = p["t_cc"].get<long>();
                if (*spec.t_cc < 2) errs.push_back("policy t_cc must be >= 2");
            }
            if (p.contains("t_rh")) spec.t_rh = p["t_rh"].get<long>();
            if (p.contains("t_sh")) spec.t_sh = p["t_sh"].get<long>();
            if (p.contains("delta_prime")) spec.delta_prime = p["delta_prime"].get<double>();
            spec.t_tl = p.value("t_tl", 200L);
            if (spec.t_tl < 1) errs.push_back("policy t_tl must be >= 1");
            spec.learn_len = p.value("learn_len", 2000L);
            if (spec.learn_len < 1) errs.push_back("policy learn_len must be >= 1");
            if (p.contains("epoch_len")) {
                spec.epoch_len = p["epoch_len"].get<long>();
                if (*spec.epoch_len <= spec.learn_len)
                    errs.push_back("policy epoch_len must exceed learn_len");
            }
            if (spec.kind == "dmc" && !spec.epoch_len)
                errs.push_back("policy kind \"dmc\" requires epoch_len");
            cfg.policies.push_back(std::move(spec));
        }
    }

    if (j.contains("schedule") && j["schedule"].is_object()) {
        const auto& s = j["schedule"];
        if (s.contains("static_u")) {
            int u = s["static_u"].get<int>();
            if (u < 1) errs.push_back("schedule.static_u must be >= 1");
            for (int i = 0; i < std::max(u, 0); ++i) cfg.arrivals.push_back({1, std::nullopt});
        } else if (s.contains("entries") && s["entries"].is_array()) {
            for (const auto& e : s["entries"]) {
                ArrivalSpec a;
                a.arrival = e.value("arrival", 1L);
                if (e.contains("departure")) a.departure = e["departure"].get<long>();
                if (a.arrival < 1) errs.push_back("schedule arrival must be >= 1");
                if (a.departure && *a.departure <= a.arrival)
                    errs.push_back("schedule departure must follow arrival");
                cfg.arrivals.push_back(a);
            }
            if (cfg.arrivals.empty()) errs.push_back("schedule.entries must be non-empty");
        } else {
            errs.push_back("schedule needs either static_u or entries");
        }
    } else {
        errs.push_back("missing \"schedule\" object");
    }

    if (!cfg.mu.empty() && cfg.horizon >= 1) {
        const int n = static_cast<int>(cfg.mu.size());
        std::vector<long> points;
        for (const auto& a : cfg.arrivals) {
            points.push_back(a.arrival);
            if (a.departure) points.push_back(*a.departure);
        }
        for (long t : points) {
            int active = 0;
            for (const auto& a : cfg.arrivals)
                if (a.arrival <= t && (!a.departure || t < *a.departure)) ++active;
            if (active > n) {
                errs.push_back("active count exceeds N");
                break;
            }
        }
    }

    if (!errs.empty()) throw ConfigError(errs);
    return cfg;
}

}  // namespace osa
