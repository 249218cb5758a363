#include "swarmsim/runner.hpp"

#include "swarmsim/errors.hpp"
#include "swarmsim/rng.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

namespace swarmsim {

void check_settings(const GeneratorSettings& s) {
    std::vector<std::string> bad;
    auto range = [&](const char* name, auto lo, auto hi) {
        if (lo > hi) bad.push_back(fmt::format("{}: min {} > max {}", name, lo, hi));
    };
    range("app cpu", s.app_cpu_min, s.app_cpu_max);
    range("app ram", s.app_ram_min, s.app_ram_max);
    range("app storage", s.app_storage_min, s.app_storage_max);
    range("image size", s.image_min, s.image_max);
    range("instances", s.instances_min, s.instances_max);
    range("capacity cpu", s.capacity_ranges.cpu_min, s.capacity_ranges.cpu_max);
    range("capacity ram", s.capacity_ranges.ram_min, s.capacity_ranges.ram_max);
    range("capacity storage", s.capacity_ranges.storage_min, s.capacity_ranges.storage_max);
    range("idle power", s.idle_power_min, s.idle_power_max);
    range("max power", s.max_power_min, s.max_power_max);
    range("latency", s.latency_min, s.latency_max);
    range("bandwidth", s.bandwidth_min, s.bandwidth_max);
    range("price", s.price_min, s.price_max);
    range("reliability", s.reliability_min, s.reliability_max);
    if (s.applications < 1 || s.capacities < 1) bad.emplace_back("application and capacity counts must be >= 1");
    if (s.compute_per_app < 0 || s.storage_per_app < 0 || s.compute_per_app + s.storage_per_app < 1) {
        bad.emplace_back("each application needs at least one component");
    }
    if (s.providers.empty() || s.locations.empty()) bad.emplace_back("provider and location sets must be non-empty");
    if (!bad.empty()) {
        std::string msg = "invalid generator settings";
        for (const auto& b : bad) msg += "; " + b;
        throw ConfigError(msg);
    }
}

GeneratedScenario generate_random_scenario(std::uint64_t seed, const GeneratorSettings& s) {
    check_settings(s);
    auto rng = Rng::substream(seed, "scenario");
    auto draw_int = [&](int lo, int hi) { return static_cast<int>(rng.uniform_int(lo, hi)); };
    auto pick = [&](const std::vector<std::string>& set) { return set[rng.index(set.size())]; };

    GeneratedScenario out;
    out.infrastructure.seed = seed;
    const auto& r = s.capacity_ranges;
    for (int i = 1; i <= s.capacities; ++i) {
        Capacity c;
        c.id = fmt::format("node-{}", i);
        c.provider = pick(s.providers);
        c.location = pick(s.locations);
        c.cpu_total = draw_int(r.cpu_min, r.cpu_max);
        c.ram_total = draw_int(r.ram_min, r.ram_max);
        c.storage_total = draw_int(r.storage_min, r.storage_max);
        c.idle_power = rng.uniform_real(s.idle_power_min, s.idle_power_max);
        c.max_power = rng.uniform_real(s.max_power_min, s.max_power_max);
        c.latency = rng.uniform_real(s.latency_min, s.latency_max);
        c.bandwidth = rng.uniform_real(s.bandwidth_min, s.bandwidth_max);
        c.price_per_hour = rng.uniform_real(s.price_min, s.price_max);
        c.reliability = rng.uniform_real(s.reliability_min, s.reliability_max);
        out.infrastructure.capacities.push_back(std::move(c));
    }
    for (int a = 1; a <= s.applications; ++a) {
        Application app;
        app.id = fmt::format("app-{}", a);
        app.priorities = {1.0, 1.0, 1.0, 1.0};
        for (int i = 1; i <= s.compute_per_app; ++i) {
            Component c;
            c.id = fmt::format("c{}", i);
            c.kind = ComponentKind::compute;
            c.cpu = draw_int(s.app_cpu_min, s.app_cpu_max);
            c.ram = draw_int(s.app_ram_min, s.app_ram_max);
            c.image_size = draw_int(s.image_min, s.image_max);
            c.instances = draw_int(s.instances_min, s.instances_max);
            app.components.push_back(std::move(c));
        }
        for (int i = 1; i <= s.storage_per_app; ++i) {
            Component c;
            c.id = fmt::format("s{}", i);
            c.kind = ComponentKind::storage;
            c.storage_size = draw_int(s.app_storage_min, s.app_storage_max);
            app.components.push_back(std::move(c));
        }
        out.applications.push_back(std::move(app));
    }
    return out;
}

std::optional<PriorityVector> preset_priorities(const std::string& profile) {
    if (profile == "energy") return PriorityVector{0.1, 0.1, 0.1, 1.0};
    if (profile == "price") return PriorityVector{0.1, 1.0, 0.1, 0.1};
    if (profile == "latency") return PriorityVector{1.0, 0.1, 0.1, 0.1};
    if (profile == "bandwidth") return PriorityVector{0.1, 0.1, 1.0, 0.1};
    if (profile == "equal") return PriorityVector{1.0, 1.0, 1.0, 1.0};
    if (profile == "random" || profile == "app") return std::nullopt;
    throw ConfigError(fmt::format("unknown priority profile '{}'", profile));
}

Strategy make_strategy(const std::string& profile, RankingMethod method, ReliabilityMode mode) {
    Strategy s{profile, std::nullopt, method, mode};
    if (profile.find(':') != std::string::npos) {
        std::vector<double> w;
        std::stringstream ss(profile);
        std::string part;
        while (std::getline(ss, part, ':')) {
            try {
                std::size_t used = 0;
                w.push_back(std::stod(part, &used));
                if (used != part.size()) throw std::invalid_argument(part);
            } catch (const std::exception&) {
                throw ConfigError(fmt::format("bad weight '{}' in profile '{}'", part, profile));
            }
        }
        if (w.size() != 4) throw ConfigError(fmt::format("profile '{}' needs four weights", profile));
        s.priorities = PriorityVector{w[0], w[1], w[2], w[3]};
        for (double x : w) {
            if (!(x >= 0)) throw ConfigError(fmt::format("profile '{}' has a negative weight", profile));
        }
        if (!(w[0] > 0 || w[1] > 0 || w[2] > 0 || w[3] > 0)) {
            throw ConfigError(fmt::format("profile '{}' needs a positive weight", profile));
        }
        return s;
    }
    s.priorities = preset_priorities(profile);
    if (profile == "random") {
        s.method = RankingMethod::random;
        s.reliability = ReliabilityMode::none;
    }
    return s;
}

std::vector<Strategy> expand_strategies(const std::vector<std::string>& profiles,
                                        const std::vector<RankingMethod>& methods, ReliabilityMode mode) {
    std::vector<Strategy> out;
    for (const auto& p : profiles) {
        if (p == "random") {
            out.push_back(make_strategy(p, RankingMethod::random, ReliabilityMode::none));
            continue;
        }
        for (auto m : methods) out.push_back(make_strategy(p, m, m == RankingMethod::random ? ReliabilityMode::none : mode));
    }
    return out;
}

void check_config(const ScenarioConfig& c) {
    if (c.profiles.empty()) throw ConfigError("at least one strategy is required");
    if (c.methods.empty()) throw ConfigError("at least one ranking method is required");
    if (c.seeds.empty() && !c.infra_path) throw ConfigError("at least one seed is required");
    if (c.infra_path.has_value() != c.apps_path.has_value()) {
        throw ConfigError("--infra and --apps must be given together");
    }
    if (c.combination_guard == 0) throw ConfigError("combination guard must be positive");
    if (c.energy_step && !(*c.energy_step > 0)) throw ConfigError("energy series step must be > 0");
    if (c.jobs == 0) throw ConfigError("jobs must be >= 1");
    for (const auto& p : c.profiles) (void)make_strategy(p, RankingMethod::cost, c.reliability);
    check_settings(c.generator);
}

std::string run_label(const Strategy& s, std::uint64_t seed) {
    std::string profile = s.profile;
    std::replace(profile.begin(), profile.end(), ':', '-');
    return fmt::format("{}_{}_{}_{}", profile, to_string(s.method), to_string(s.reliability), seed);
}

std::string metrics_csv_row(const Strategy& s, std::uint64_t seed, const MetricsReport& m) {
    return fmt::format("{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f}", s.profile, to_string(s.method),
                       to_string(s.reliability), seed, m.simulation_time, m.total_price, m.avg_deployment_time,
                       m.total_energy);
}

namespace {

struct LoadedScenario {
    std::vector<Capacity> capacities;
    std::vector<Application> applications;
    std::optional<std::uint64_t> seed;
};

std::optional<LoadedScenario> load_files(const ScenarioConfig& c) {
    if (!c.infra_path) return std::nullopt;
    auto infra = load_infrastructure(read_json_file(*c.infra_path));
    auto apps = load_applications(read_json_file(*c.apps_path));
    return LoadedScenario{std::move(infra.capacities), std::move(apps), infra.seed};
}

}  // namespace

std::vector<RunRecord> run_matrix(const ScenarioConfig& config) {
    check_config(config);
    const auto files = load_files(config);
    auto seeds = config.seeds;
    if (seeds.empty()) {
        if (!files || !files->seed) throw ConfigError("no seeds given and the infrastructure file has none");
        seeds.push_back(*files->seed);
    }

    const auto strategies = expand_strategies(config.profiles, config.methods, config.reliability);
    std::vector<RunRecord> records;
    for (const auto& s : strategies) {
        for (auto seed : seeds) records.push_back({s, seed, false, {}, {}});
    }

    auto execute = [&](RunRecord& rec) {
        try {
            SimulationOptions opt;
            opt.seed = rec.seed;
            opt.strategy = rec.strategy;
            opt.combination_guard = config.combination_guard;
            opt.combination_scope = config.combination_scope;
            if (files) {
                rec.result = simulate(files->capacities, files->applications, opt);
            } else {
                const auto gen = generate_random_scenario(rec.seed, config.generator);
                rec.result = simulate(gen.infrastructure.capacities, gen.applications, opt);
            }
            rec.ok = true;
        } catch (const SimulationAborted& e) {
            rec.error = e.what();
            rec.result.log = e.partial_log();
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
    };

    const unsigned workers = std::min<unsigned>(config.jobs, static_cast<unsigned>(records.size()));
    if (workers <= 1) {
        for (auto& r : records) execute(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < records.size(); i = next++) execute(records[i]);
            });
        }
        for (auto& t : pool) t.join();
    }
    return records;
}

int run_scenario(const ScenarioConfig& config, std::ostream& status) {
    const auto records = run_matrix(config);
    std::filesystem::create_directories(config.out_dir);

    std::ofstream csv(config.out_dir / "metrics.csv", std::ios::binary);
    if (!csv) throw ConfigError(fmt::format("cannot write to '{}'", config.out_dir.string()));
    csv << kMetricsCsvHeader << '\n';

    int failures = 0;
    for (const auto& rec : records) {
        const auto label = run_label(rec.strategy, rec.seed);
        if (!rec.ok) {
            ++failures;
            status << fmt::format("FAIL {}: {}\n", label, rec.error);
            continue;
        }
        const auto& m = rec.result.metrics;
        csv << metrics_csv_row(rec.strategy, rec.seed, m) << '\n';
        status << fmt::format("ok   {}: sim {:.3f} min, price {:.3f} EUR, deploy {:.3f} min, energy {:.3f} kWh{}\n",
                              label, m.simulation_time, m.total_price, m.avg_deployment_time, m.total_energy,
                              m.rejected_applications ? fmt::format(", {} rejected", m.rejected_applications) : "");
        if (config.trace) {
            std::ofstream tr(config.out_dir / fmt::format("trace_{}.ndjson", label), std::ios::binary);
            write_trace(tr, rec.result.log);
        }
        if (config.energy_step) {
            std::vector<Capacity> caps;
            if (config.infra_path) {
                caps = load_infrastructure(read_json_file(*config.infra_path)).capacities;
            } else {
                caps = generate_random_scenario(rec.seed, config.generator).infrastructure.capacities;
            }
            std::ofstream es(config.out_dir / fmt::format("energy_{}.csv", label), std::ios::binary);
            es << "node_id,time_s,cumulative_kwh\n";
            for (const auto& [node, series] : per_node_energy_series(rec.result.log, caps, *config.energy_step)) {
                for (const auto& sample : series) es << fmt::format("{},{:.3f},{:.9f}\n", node, sample.time, sample.kwh);
            }
        }
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace swarmsim
