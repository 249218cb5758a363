#pragma once

#include "swarmsim/kernel.hpp"
#include "swarmsim/model.hpp"
#include "swarmsim/offers.hpp"
#include "swarmsim/ranking.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace swarmsim {

/// Length of the post-deployment CPU task run by every compute unit.
inline constexpr double kWorkloadSeconds = 1800.0;

/// Container image source. Latency defaults to 0 ms.
struct ImageRegistry {
    double bandwidth = 1000.0;  // Mbps
    double latency = 0.0;       // ms
    std::map<std::string, double> images;  // "<app>/<component>" -> MB

    void add(const Application& app);
    [[nodiscard]] double image_size(const std::string& app, const std::string& component) const;
};

struct SwarmMember {
    std::size_t capacity = 0;
    std::size_t unit = 0;
    std::string component;
    int instance = 0;
    SliceId slice;
    double deployed_at = 0.0;
};

/// The selected resources serving one application.
struct Swarm {
    std::string application_id;
    std::size_t lead_capacity = 0;
    std::vector<SwarmMember> members;  // ordered like the winning combination's pairs
};

/// First offer in rank order flagged available. Every reservation in `all_pairs` that is
/// not part of the winner is released. With no available offer, everything is released
/// and DeploymentRejected is thrown. `available` is indexed like `offers`; empty = all.
std::size_t select_winner(const RankedOffers& ranked, const std::vector<bool>& available,
                          std::span<const OfferCombination> offers, std::span<const OfferPair> all_pairs,
                          Infrastructure& infra);

/// Participating capacity with the most CPU cores; ties go to the smaller id.
[[nodiscard]] std::size_t select_lead_resource(const OfferCombination& winner, const Infrastructure& infra);

/// Moves the winner's slices to assigned, launches the lead Swarm Agent and schedules
/// the image transfers (concurrent across capacities, serial within one). Storage units
/// are allocated at deployment start. Returns the swarm with planned deployment times.
Swarm deploy_application(Kernel& kernel, Infrastructure& infra, const Application& app,
                         std::span<const PlacementUnit> units, const OfferCombination& winner,
                         std::size_t lead_capacity, const ImageRegistry& registry);

/// Schedules a full-core task of kWorkloadSeconds for each compute member, starting at
/// its deployment time.
void run_workload(Kernel& kernel, const Swarm& swarm, std::span<const PlacementUnit> units,
                  const Infrastructure& infra);

}  // namespace swarmsim
