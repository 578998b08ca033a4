#include "osa/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "osa/baselines.hpp"
#include "osa/durations.hpp"
#include "osa/metrics.hpp"
#include "osa/tdn.hpp"
#include "osa/tsn.hpp"

namespace osa {

namespace {

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << v;
    return out.str();
}

}  // namespace

ResolvedDurations resolve_cc_split(const PolicySpec& spec, const ExperimentConfig& cfg) {
    const int n = static_cast<int>(cfg.mu.size());
    ResolvedDurations d;
    long theory_rh = durations::t_rh(n, cfg.theta, spec.delta / 3.0);
    long theory_sh = durations::t_sh(n, spec.epsilon, spec.delta / 3.0);
    if (spec.t_rh && spec.t_sh) {
        d.t_rh = *spec.t_rh;
        d.t_sh = *spec.t_sh;
    } else if (spec.t_cc) {
        d.t_rh = std::min(theory_rh, *spec.t_cc - 1);
        d.t_sh = *spec.t_cc - d.t_rh;
    } else {
        d.t_rh = spec.t_rh.value_or(theory_rh);
        d.t_sh = spec.t_sh.value_or(theory_sh);
    }
    return d;
}

PolicyFactory make_policy_factory(const PolicySpec& spec, const ExperimentConfig& cfg) {
    const int n = static_cast<int>(cfg.mu.size());
    auto split = resolve_cc_split(spec, cfg);
    if (spec.kind == "tsn") {
        TsnPolicy::Config pc;
        pc.n = n;
        pc.theta = cfg.theta;
        pc.delta = spec.delta;
        pc.epsilon = spec.epsilon;
        pc.t_rh_override = split.t_rh;
        pc.t_sh_override = split.t_sh;
        pc.delta_prime_override = spec.delta_prime;
        return [pc](std::uint64_t seed) { return std::make_unique<TsnPolicy>(pc, seed); };
    }
    if (spec.kind == "tdn") {
        TdnPolicy::Config pc;
        pc.n = n;
        pc.theta = cfg.theta;
        pc.delta = spec.delta;
        pc.epsilon = spec.epsilon;
        pc.t_tl = spec.t_tl;
        pc.t_rh_override = split.t_rh;
        pc.t_sh_override = split.t_sh;
        pc.delta_prime_override = spec.delta_prime;
        return [pc](std::uint64_t seed) { return std::make_unique<TdnPolicy>(pc, seed); };
    }
    if (spec.kind == "random")
        return [n](std::uint64_t seed) { return std::make_unique<RandomPolicy>(n, seed); };
    if (spec.kind == "seqhop")
        return [n](std::uint64_t seed) { return std::make_unique<SeqHopPolicy>(n, seed); };
    if (spec.kind == "mc") {
        long learn = spec.learn_len;
        return [n, learn](std::uint64_t seed) {
            return std::make_unique<McPolicy>(n, learn, std::nullopt, seed);
        };
    }
    if (spec.kind == "dmc") {
        long learn = spec.learn_len;
        long epoch = *spec.epoch_len;
        return [n, learn, epoch](std::uint64_t seed) {
            return std::make_unique<McPolicy>(n, learn, epoch, seed);
        };
    }
    throw std::invalid_argument("unknown policy kind " + spec.kind);
}

Schedule make_schedule(const PolicySpec& spec, const ExperimentConfig& cfg) {
    Schedule sched;
    sched.horizon = cfg.horizon;
    auto factory = make_policy_factory(spec, cfg);
    int id = 1;
    for (const auto& a : cfg.arrivals) {
        ScheduleEntry e;
        e.su_id = id++;
        e.policy_kind = spec.kind;
        e.make = factory;
        e.arrival = a.arrival;
        e.departure = a.departure.value_or(kNever);
        sched.entries.push_back(std::move(e));
    }
    return sched;
}

namespace {

struct RunResult {
    bool ok = false;
    std::string error;
    MetricSeries metrics;
};

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    out << body;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

RunResult one_run(const PolicySpec& spec, const ExperimentConfig& cfg,
                  std::uint64_t seed, const std::string& digest,
                  const std::filesystem::path& dir, int rep) {
    RunResult res;
    try {
        ChannelModel model(cfg.mu, cfg.theta, seed);
        Schedule sched = make_schedule(spec, cfg);
        Trace trace = run(sched, model, seed);
        res.metrics = compute_metrics(trace, cfg.mu);

        std::ostringstream stem;
        stem << spec.name << "_rep" << rep;
        write_file(dir / (stem.str() + ".csv"), trace.to_csv());

        auto split = resolve_cc_split(spec, cfg);
        nlohmann::json manifest;
        manifest["seed"] = seed;
        manifest["config_digest"] = digest;
        manifest["policy"] = spec.name;
        manifest["kind"] = spec.kind;
        manifest["durations"]["t_rh"] = split.t_rh;
        manifest["durations"]["t_sh"] = split.t_sh;
        if (spec.kind == "tdn") manifest["durations"]["t_tl"] = spec.t_tl;
        if (spec.kind == "mc" || spec.kind == "dmc") {
            manifest["durations"]["learn_len"] = spec.learn_len;
            if (spec.epoch_len) manifest["durations"]["epoch_len"] = *spec.epoch_len;
        }
        write_file(dir / (stem.str() + ".json"), manifest.dump(2) + "\n");
        res.ok = true;
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    return res;
}

std::string aggregate_csv(const std::vector<MetricSeries>& runs, long horizon,
                          long stride) {
    std::ostringstream out;
    out << "slot,regret_mean,regret_stderr,collisions_mean,collisions_stderr,"
           "utilization_mean,utilization_stderr\n";
    out << std::setprecision(10);
    const double r = static_cast<double>(runs.size());
    auto stats = [&](auto getter, long idx, double& mean, double& se) {
        double sum = 0.0, sq = 0.0;
        for (const auto& m : runs) {
            double v = getter(m, idx);
            sum += v;
            sq += v * v;
        }
        mean = sum / r;
        double var = runs.size() > 1 ? std::max(0.0, (sq - sum * sum / r) / (r - 1.0)) : 0.0;
        se = std::sqrt(var / r);
    };
    for (long t = stride; t <= horizon; t += stride) {
        long idx = t - 1;
        double rm, rs, cm, cs, um, us;
        stats([](const MetricSeries& m, long i) { return m.regret[i]; }, idx, rm, rs);
        stats([](const MetricSeries& m, long i) { return static_cast<double>(m.collisions[i]); },
              idx, cm, cs);
        stats([](const MetricSeries& m, long i) { return m.utilization[i]; }, idx, um, us);
        out << t << ',' << rm << ',' << rs << ',' << cm << ',' << cs << ','
            << um << ',' << us << '\n';
    }
    return out.str();
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, const std::string& config_text,
                   std::ostream& log) {
    const std::string digest = hex64(fnv1a(config_text));
    std::filesystem::path dir(cfg.output);
    std::filesystem::create_directories(dir);

    struct Job {
        const PolicySpec* spec;
        int rep;
    };
    std::vector<Job> jobs;
    for (const auto& spec : cfg.policies)
        for (int rep = 0; rep < cfg.repetitions; ++rep) jobs.push_back({&spec, rep});

    std::vector<RunResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(),
                                             static_cast<unsigned>(jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= jobs.size()) return;
                results[i] = one_run(*jobs[i].spec, cfg, cfg.seed + jobs[i].rep,
                                     digest, dir, jobs[i].rep);
            }
        });
    }
    for (auto& t : pool) t.join();

    bool any_failed = false;
    nlohmann::json manifest;
    manifest["config_digest"] = digest;
    manifest["base_seed"] = cfg.seed;
    manifest["repetitions"] = cfg.repetitions;
    manifest["stride"] = cfg.stride;
    manifest["failed_runs"] = nlohmann::json::array();

    for (std::size_t p = 0; p < cfg.policies.size(); ++p) {
        const auto& spec = cfg.policies[p];
        std::vector<MetricSeries> ok_runs;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            if (jobs[i].spec != &spec) continue;
            if (results[i].ok) {
                ok_runs.push_back(std::move(results[i].metrics));
            } else {
                any_failed = true;
                log << "run failed: " << spec.name << " rep " << jobs[i].rep << ": "
                    << results[i].error << '\n';
                manifest["failed_runs"].push_back(
                    {{"policy", spec.name}, {"rep", jobs[i].rep}, {"error", results[i].error}});
            }
        }
        if (!ok_runs.empty())
            write_file(dir / (spec.name + "_aggregate.csv"),
                       aggregate_csv(ok_runs, cfg.horizon, cfg.stride));
        log << spec.name << ": " << ok_runs.size() << '/' << cfg.repetitions
            << " runs complete\n";
    }
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    return any_failed ? 2 : 0;
}

std::string explain_durations(const ExperimentConfig& cfg) {
    const int n = static_cast<int>(cfg.mu.size());
    std::ostringstream out;
    out << "channels N = " << n << ", theta = " << cfg.theta << '\n';
    for (const auto& spec : cfg.policies) {
        out << "\npolicy \"" << spec.name << "\" (" << spec.kind << ")\n";
        if (spec.kind != "tsn" && spec.kind != "tdn") {
            if (spec.kind == "mc" || spec.kind == "dmc") {
                out << "  learn_len = " << spec.learn_len << '\n';
                if (spec.epoch_len) out << "  epoch_len = " << *spec.epoch_len << '\n';
            } else {
                out << "  no derived durations\n";
            }
            continue;
        }
        auto split = resolve_cc_split(spec, cfg);
        double d3 = spec.delta / 3.0;
        out << "  T_RH = " << split.t_rh
            << "   [theory ceil(ln(delta/3 * theta^2/2 / N) / ln(1-(1-1/N)^(N-1) mu_N)) = "
            << durations::t_rh(n, cfg.theta, d3) << "]\n";
        out << "  T_SH = " << split.t_sh
            << "   [theory ceil(N/(2 eps^2) ln(4N/(delta/3))) = "
            << durations::t_sh(n, spec.epsilon, d3) << "]\n";
        double dp = spec.delta_prime
                        ? *spec.delta_prime
                        : durations::default_delta_prime(n, d3);
        out << "  delta' = " << dp << '\n';
        std::vector<double> ranked = cfg.mu;
        std::sort(ranked.begin(), ranked.end(), std::greater<double>());
        auto table = durations::m_table(ranked, dp);
        out << "  rank  mu    N_j  M_j (true-mu table; runs derive it from estimates)\n";
        for (int r = 0; r < n; ++r)
            out << "  " << std::setw(4) << (r + 1) << "  " << std::setw(4) << ranked[r]
                << "  " << std::setw(3) << table.n_probe[r] << "  " << std::setw(3)
                << table.m_budget[r] << '\n';
        if (spec.kind == "tsn") {
            int u = static_cast<int>(cfg.arrivals.size());
            out << "  T_TR(U=" << u << ") <= " << durations::t_tr(n, cfg.theta, d3, u)
                << "   [U * sum of top-U budgets bound]\n";
        } else {
            long bci = durations::t_bci(n, cfg.theta, spec.delta);
            out << "  T_BCI = " << bci << "   [one full probe pass, delta/3 per probe]\n";
            out << "  T_TL = " << spec.t_tl << '\n';
            out << "  x_0 = "
                << durations::x_switches(cfg.horizon, split.t_rh + split.t_sh, bci,
                                         spec.t_tl, 0)
                << "   [TL/BCI switches over the horizon for an SU at t=0]\n";
        }
    }
    return out.str();
}

int run_replay(const std::string& fixture_text, std::ostream& log) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(fixture_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError({std::string("fixture is not valid JSON: ") + e.what()});
    }

    const std::string kind = j.value("kind", std::string());
    if (kind != "tsn" && kind != "tdn")
        throw ConfigError({"fixture kind must be tsn or tdn"});
    const int n = j.value("channels", 0);
    const long horizon = j.value("horizon", 0L);
    if (n < 1 || horizon < 1) throw ConfigError({"fixture needs channels and horizon"});
    const long t_tl = j.value("t_tl", 200L);
    std::vector<long> budgets = j.value("budgets_m", std::vector<long>());
    if (static_cast<int>(budgets.size()) != n)
        throw ConfigError({"budgets_m must list one budget per rank"});

    std::map<int, std::vector<long>> vacant;
    for (auto it = j.at("vacant").begin(); it != j.at("vacant").end(); ++it)
        vacant[std::stoi(it.key()) - 1] = it.value().get<std::vector<long>>();
    ScriptedVacancies source(n, std::move(vacant));

    Schedule sched;
    sched.horizon = horizon;
    for (const auto& su : j.at("sus")) {
        ScheduleEntry e;
        e.su_id = su.at("id").get<int>();
        e.policy_kind = kind;
        int start_rank = su.at("start_rank").get<int>() - 1;
        if (kind == "tsn")
            e.make = [n, start_rank, budgets](std::uint64_t) {
                return std::make_unique<TsnPolicy>(n, start_rank, budgets);
            };
        else
            e.make = [n, start_rank, budgets, t_tl](std::uint64_t) {
                return std::make_unique<TdnPolicy>(n, start_rank, budgets, t_tl);
            };
        e.arrival = su.value("arrival", 1L);
        if (su.contains("departure") && !su["departure"].is_null())
            e.departure = su["departure"].get<long>();
        sched.entries.push_back(std::move(e));
    }

    Trace trace = run(sched, source, 1);

    bool all_ok = true;
    for (const auto& exp : j.at("expect")) {
        int su_id = exp.at("su").get<int>();
        std::string type = exp.at("event").get<std::string>();
        int rank = exp.at("rank").get<int>() - 1;
        long slot = exp.at("slot").get<long>();

        const SuEventLog* su_log = nullptr;
        for (const auto& l : trace.su_logs)
            if (l.su_id == su_id) su_log = &l;
        bool found = false;
        if (su_log) {
            for (const auto& ev : su_log->events) {
                long global = su_log->arrival - 1 + ev.slot;
                if (ev.type == type && ev.rank == rank && global == slot) {
                    found = true;
                    break;
                }
            }
        }
        all_ok = all_ok && found;
        log << (found ? "  ok   " : "  MISS ") << "su " << su_id << ' ' << type
            << " rank " << (rank + 1) << " at slot " << slot << '\n';
        if (!found && su_log) {
            log << "        recorded:";
            for (const auto& ev : su_log->events)
                log << ' ' << ev.type << "(rank " << (ev.rank + 1) << ", slot "
                    << (su_log->arrival - 1 + ev.slot) << ')';
            log << '\n';
        }
    }
    log << (all_ok ? "replay: all expectations met\n" : "replay: mismatches found\n");
    return all_ok ? 0 : 2;
}

}  // namespace osa
