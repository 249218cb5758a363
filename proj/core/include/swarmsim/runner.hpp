#pragma once

#include "swarmsim/io.hpp"
#include "swarmsim/metrics.hpp"
#include "swarmsim/simulation.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace swarmsim {

/// Uniform draw intervals for generated scenarios. Defaults follow the reference setup:
/// 6 applications of 3 compute + 1 storage components on 8 capacities.
struct GeneratorSettings {
    int applications = 6;
    int capacities = 8;
    int compute_per_app = 3;
    int storage_per_app = 1;

    int app_cpu_min = 1, app_cpu_max = 6;
    int app_ram_min = 1, app_ram_max = 6;
    int app_storage_min = 1, app_storage_max = 10;
    int image_min = 1, image_max = 500;  // MB
    int instances_min = 1, instances_max = 3;

    CapacityRanges capacity_ranges;
    double idle_power_min = 150, idle_power_max = 225;
    double max_power_min = 500, max_power_max = 3500;
    double latency_min = 15, latency_max = 100;
    double bandwidth_min = 50, bandwidth_max = 1200;
    double price_min = 0.025, price_max = 25;
    double reliability_min = 0.5, reliability_max = 1.0;
    std::vector<std::string> providers{"AWS", "Azure"};
    std::vector<std::string> locations{"EU", "US"};
};

/// Throws ConfigError if any range has min > max or a count is < 1.
void check_settings(const GeneratorSettings& settings);

struct GeneratedScenario {
    InfrastructureDescriptor infrastructure;
    std::vector<Application> applications;
};

[[nodiscard]] GeneratedScenario generate_random_scenario(std::uint64_t seed, const GeneratorSettings& settings = {});

/// Named priority profiles: energy/price/latency/bandwidth put 1.0 on that attribute and
/// 0.1 elsewhere, equal is all 1.0. "random" and "app" carry no override.
[[nodiscard]] std::optional<PriorityVector> preset_priorities(const std::string& profile);

/// Parses a profile name or an explicit "latency:price:bandwidth:energy" weight vector.
[[nodiscard]] Strategy make_strategy(const std::string& profile, RankingMethod method, ReliabilityMode mode);

/// profiles x methods; the "random" profile contributes a single random-method strategy.
[[nodiscard]] std::vector<Strategy> expand_strategies(const std::vector<std::string>& profiles,
                                                      const std::vector<RankingMethod>& methods,
                                                      ReliabilityMode mode);

inline const std::vector<std::string> kDefaultProfiles{"energy", "price", "latency", "bandwidth", "equal", "random"};

struct ScenarioConfig {
    std::optional<std::filesystem::path> infra_path;
    std::optional<std::filesystem::path> apps_path;
    /// Without descriptor files, every seed runs on its own generated scenario.
    GeneratorSettings generator;
    std::vector<std::string> profiles = kDefaultProfiles;
    std::vector<RankingMethod> methods{RankingMethod::cost, RankingMethod::borda};
    ReliabilityMode reliability = ReliabilityMode::none;
    std::vector<std::uint64_t> seeds;
    std::filesystem::path out_dir = "out";
    bool trace = false;
    std::optional<double> energy_step;  // seconds; emits energy series CSVs when set
    std::size_t combination_guard = kDefaultCombinationGuard;
    CombinationScope combination_scope = CombinationScope::component;
    unsigned jobs = 1;
};

/// Throws ConfigError describing the first structural problem.
void check_config(const ScenarioConfig& config);

inline constexpr const char* kMetricsCsvHeader =
    "strategy,method,reliability_mode,seed,simulation_time_min,total_price_eur,avg_deployment_time_min,"
    "total_energy_kwh";

struct RunRecord {
    Strategy strategy;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    RunResult result;
};

[[nodiscard]] std::string metrics_csv_row(const Strategy& strategy, std::uint64_t seed, const MetricsReport& m);
[[nodiscard]] std::string run_label(const Strategy& strategy, std::uint64_t seed);

/// Runs every (strategy, seed) pair. Records come back in matrix order regardless of jobs.
[[nodiscard]] std::vector<RunRecord> run_matrix(const ScenarioConfig& config);

/// run_matrix plus file emission (metrics.csv, optional traces and energy series) and a
/// status line per run on `status`. Returns 0 iff every run succeeded.
int run_scenario(const ScenarioConfig& config, std::ostream& status);

}  // namespace swarmsim
