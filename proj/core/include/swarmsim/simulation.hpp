#pragma once

#include "swarmsim/deployment.hpp"
#include "swarmsim/kernel.hpp"
#include "swarmsim/metrics.hpp"
#include "swarmsim/model.hpp"
#include "swarmsim/offers.hpp"
#include "swarmsim/ranking.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace swarmsim {

/// How offers are ranked for every application in a run.
struct Strategy {
    std::string profile = "app";
    /// Replaces every application's own priorities when set.
    std::optional<PriorityVector> priorities;
    RankingMethod method = RankingMethod::cost;
    ReliabilityMode reliability = ReliabilityMode::none;
};

struct SimulationOptions {
    std::uint64_t seed = 0;
    Strategy strategy;
    std::size_t combination_guard = kDefaultCombinationGuard;
    CombinationScope combination_scope = CombinationScope::component;
    double registry_bandwidth = 1000.0;  // Mbps
    double registry_latency = 0.0;       // ms
    double message_size_mb = kMessageSizeMb;
    /// Re-broadcast delay after a round without full coverage, and the attempt budget
    /// before the application is rejected.
    double retry_delay = 1.0;
    int max_retries = 20;
    /// Verify per-capacity resource conservation after every event.
    bool check_invariants = true;
};

struct RunResult {
    EventLog log;
    MetricsReport metrics;
    std::vector<Swarm> swarms;
    std::vector<std::string> rejected;
    std::vector<bool> ascending_agents;
    std::size_t slices_reserved_at_end = 0;
    std::size_t slices_assigned_at_end = 0;
    std::size_t invariant_checks = 0;
};

/// Half the agents (rounded up) sort ascending; which ones is drawn from the seed.
[[nodiscard]] std::vector<bool> assign_sort_directions(std::size_t agents, std::uint64_t seed);

/// One deterministic run of the whole deployment pipeline. Throws SimulationAborted
/// (with the partial log) on a kernel or domain failure.
[[nodiscard]] RunResult simulate(const std::vector<Capacity>& capacities, const std::vector<Application>& apps,
                                 const SimulationOptions& options);

}  // namespace swarmsim
