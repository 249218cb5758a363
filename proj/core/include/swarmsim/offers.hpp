#pragma once

#include "swarmsim/kernel.hpp"
#include "swarmsim/model.hpp"
#include "swarmsim/rng.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace swarmsim {

/// Default broadcast message size (2 KB).
inline constexpr double kMessageSizeMb = 0.002;
inline constexpr std::size_t kDefaultCombinationGuard = 1'000'000;

/// One agent offering one placement unit, backed by a reserved slice.
struct OfferPair {
    std::size_t agent = 0;  // index into Infrastructure::agents()
    std::size_t unit = 0;   // index into the application's placement units
    SliceId slice;

    friend bool operator==(const OfferPair&, const OfferPair&) = default;
    friend auto operator<=>(const OfferPair&, const OfferPair&) = default;
};

/// A full assignment of every placement unit to exactly one agent.
struct OfferCombination {
    std::vector<OfferPair> pairs;  // ordered by unit index
    QoSVector qos;
    double reliability = 0.0;
};

enum class Coverage { full, partial, zero };
[[nodiscard]] std::string_view to_string(Coverage c) noexcept;

/// What a combination chooses independently.
///   unit:      each placement unit may go to a different agent.
///   component: all instances of a component go to the same agent.
enum class CombinationScope { unit, component };

/// Uniform draw over the agent list.
[[nodiscard]] std::size_t select_gateway(std::span<const ResourceAgent> agents, Rng& rng);

/// First-fit matchmaking of `units` against the agent's free pool. Reserves slices for
/// every unit placed; multi-instance components are all-or-nothing.
[[nodiscard]] std::vector<OfferPair> first_fit_match(std::size_t agent, const Application& app,
                                                     std::span<const PlacementUnit> units, Infrastructure& infra);

[[nodiscard]] Coverage classify_coverage(std::span<const OfferPair> response, std::span<const PlacementUnit> units);

/// Cartesian product over the agents offering each unit (or component, per `scope`).
/// Empty iff some unit has no offer. Throws CombinationOverflow above `guard`.
[[nodiscard]] std::vector<OfferCombination> generate_combinations(std::span<const OfferPair> pairs,
                                                                  std::span<const PlacementUnit> units,
                                                                  std::size_t guard = kDefaultCombinationGuard,
                                                                  CombinationScope scope = CombinationScope::unit);

/// Distinct capacities a combination touches, in ascending index order.
[[nodiscard]] std::vector<std::size_t> participating_capacities(const OfferCombination& combo,
                                                                const Infrastructure& infra);

/// Per-attribute sum over the distinct participating capacities.
[[nodiscard]] QoSVector aggregate_offer_qos(const OfferCombination& combo, const Infrastructure& infra);

/// Mean reliability of the distinct participating capacities.
[[nodiscard]] double offer_reliability(const OfferCombination& combo, const Infrastructure& infra);

/// Returns every listed slice to free. Throws StateError if one is not reserved.
void release_reservations(std::span<const OfferPair> losing, Infrastructure& infra);

/// Called once every agent has answered; responses are indexed by agent.
using ResponsesHandler = std::function<void(Kernel&, std::vector<std::vector<OfferPair>>)>;

/// Schedules a request to every agent (the gateway's own at zero delay), matchmaking on
/// arrival, and the response back to the gateway. `on_complete` fires with the last response.
void broadcast_request(Kernel& kernel, Infrastructure& infra, std::size_t gateway, const Application& app,
                       std::span<const PlacementUnit> units, ResponsesHandler on_complete,
                       double message_size_mb = kMessageSizeMb);

}  // namespace swarmsim
